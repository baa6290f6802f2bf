"""
Case runs, reference runs and the incompatibility experiment.
"""
import logging
import time
from dataclasses import replace

from .. import create_config
from ..chwm.system import assemble_system, dump_system
from ..errors import ConfigError
from ..models.enums import CornerMode
from ..newmark.integrator import NewmarkParams, effective_matrix, run
from ..newmark.recorders import EnergyRecorder, FieldRecorder, SnapshotRecorder
from .excitation import surface_forcing
from .metrics import attach_errors, energy_grows

logger = logging.getLogger(__name__)


def newmark_params(case, config):
    return NewmarkParams(dt=case.dt, n_steps=case.n_steps,
                         gamma=config.NEWMARK_GAMMA, beta=config.NEWMARK_BETA)


def simulate(case, config=None, *, surface=True, forcing=None, window=None, record_fields=True,
             stride=1, x_interval=None, snapshot_times=(), snapshot_dir=None, dump_dir=None,
             initial=None, corner=None, label=None):
    """
    Assemble and integrate one case.

    Args:
        window: x-interval of the recorded nodal fields (default: the whole grid)
        x_interval: additionally record the energies restricted to this interval
        snapshot_times: times at which x,y,value CSVs are written to snapshot_dir
        dump_dir: write M, C and K in Matrix Market format there
        initial: optional State; a callable (system) -> State is also accepted

    Returns:
        RunRecord with metadata (case id, config hash, dimension)
    """
    config = config or create_config()
    label = label or case.id
    logger.info(f"Running {label} (config {case.config_hash()})")
    start = time.perf_counter()
    layout, system = assemble_system(case, surface=surface, forcing=forcing,
                                     threads=config.THREADS, corner=corner)
    if dump_dir:
        dump_system(system, dump_dir)

    recorders = [EnergyRecorder()]
    if record_fields:
        recorders.append(FieldRecorder(window=window))
    if x_interval is not None:
        recorders.append(EnergyRecorder(x_interval=x_interval))
    if snapshot_times:
        recorders.append(SnapshotRecorder(snapshot_times, snapshot_dir or config.OUTPUT_DIR, case.dt,
                                          fields=('eta', 'phi'), digits=config.CSV_DIGITS))
    if callable(initial):
        initial = initial(system)

    params = newmark_params(case, config)
    factorization = effective_matrix(system, params, method=config.SOLVER_METHOD,
                                     ordering=config.SOLVER_ORDERING, rtol=config.KRYLOV_RTOL)
    record = run(system, params, recorders, stride=stride, initial=initial, case_id=label,
                 factorization=factorization)
    record.metadata.update({
        'case': case.id,
        'config_hash': case.config_hash(),
        'dimension': layout.dimension,
        'pade_order': case.pade_order,
        'active_terms': len(layout.active),
        'keep_fraction': case.keep_fraction,
        'dt': case.dt,
        'h': case.h,
        'profile': getattr(config, 'NAME', None),
        'wall_time': time.perf_counter() - start,
    })
    logger.info(f"Finished {label}: {len(record)} samples in {record.metadata['wall_time']:.1f}s")
    return record.check()


def run_case(case, config=None, **options):
    """Run a case recording energies and the nodal fields on [-l, l]."""
    options.setdefault('window', (-case.l, case.l))
    return simulate(case, config, **options)


def reference_is_closed(case):
    """No wave launched at x0 travels to +-l_ref and back into [-l, l] within T."""
    path = (case.l_ref - abs(case.x0)) + (case.l_ref - case.l)
    return case.params.c_f * case.T <= path


def reference_case(case, config=None, order=None):
    """
    Enlarged-domain case: same physics, mesh and time step on [-l_ref, l_ref].

    A closed reference has Neumann lateral sides; otherwise every boundary carries
    the Padé condition at max(order, min(REFERENCE_ORDER, cap)) without reduction.
    """
    if case.l_ref is None:
        raise ConfigError(f"case {case.id} has no reference domain", key="l_ref")
    config = config or create_config()
    if reference_is_closed(case):
        changes = dict(habc_sides=False, corner=CornerMode.NEUMANN, keep_fraction=1.0)
    else:
        cap = config.PADE_ORDER_CAP or config.REFERENCE_ORDER
        ref_order = max(order or case.pade_order, min(config.REFERENCE_ORDER, cap))
        changes = dict(habc_sides=True, pade_order=ref_order, keep_fraction=1.0)
    return case.with_overrides(id=f"{case.id}-ref", l=case.l_ref, l_ref=None, **changes)


def run_reference(case, config=None, order=None, **options):
    """Reference run recorded on the nodes of [-l, l], forced exactly like the case."""
    ref = reference_case(case, config, order)
    mode = "closed" if not ref.habc_sides else f"order {ref.pade_order}"
    logger.info(f"Reference for {case.id}: l_ref={case.l_ref}, {mode}")
    options.setdefault('window', (-case.l, case.l))
    return simulate(ref, config, forcing=surface_forcing(case), **options)


def run_with_reference(case, config=None, reference=None, **options):
    """Run a case and attach its errors against the reference (computed when not given)."""
    record = run_case(case, config, **options)
    if case.l_ref is None:
        return record, None
    if reference is None:
        reference = run_reference(case, config, stride=options.get('stride', 1))
    summary = attach_errors(record, reference)
    logger.info(f"Case {case.id}: E_eta={summary.E_eta}, E_phi={summary.E_phi}")
    return record, reference


def incompatibility_experiment(case, config=None, factor=10.0, **options):
    """
    Compatible run and the same run with a_s = a_f = 1.

    Growth of the incompatible basin energy beyond factor times its value at
    T_excit is flagged in the metadata, not raised.

    Returns:
        (compatible RunRecord, incompatible RunRecord)
    """
    if not case.params.ste_enabled:
        raise ConfigError("the incompatibility experiment needs surface tension (sigma > 0)",
                          key="sigma")
    options.setdefault('record_fields', False)
    compatible = run_case(case, config, **options)
    variant = replace(case, id=f"{case.id}-incompatible", params=case.params.incompatible_variant())
    incompatible = run_case(variant, config, **options)
    for record in (compatible, incompatible):
        record.metadata['unstable'] = energy_grows(record, case.T_excit, factor)
    if incompatible.metadata['unstable']:
        logger.warning(f"Case {case.id}: incompatible coefficients make the basin energy grow "
                       f"beyond {factor}x its value at T_excit")
    return compatible, incompatible
