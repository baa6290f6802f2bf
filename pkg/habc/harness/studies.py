"""
Study drivers: mesh convergence, Padé reduction and the obstacle time-step study.

Every driver returns a list of row dicts; the command line writes them as CSV.
"""
import logging

from .. import create_config
from ..pade.coefficients import reduction_active_set
from .catalog import SPECIAL_VARIANTS, apply_profile, special_case
from .metrics import attach_errors
from .runner import run_case, run_reference

logger = logging.getLogger(__name__)

STUDY_COLUMNS = ('mesh', 'order', 'E_eta', 'E_phi')
REDUCTION_COLUMNS = ('order', 'keep_fraction', 'active_terms', 'E_eta', 'E_phi',
                     'E_surface_final', 'E_basin_final')
TIME_STEP_COLUMNS = ('variant', 'dt', 'keep_fraction', 'active_terms',
                     'E_surface_sub_final', 'E_basin_sub_final', 'E_surface_sub_max', 'E_basin_sub_max')


def mesh_sequence(h, levels=3):
    """h, h/2, h/4, ..."""
    return [h / 2 ** k for k in range(levels)]


def convergence_study(case, meshes=None, orders=(2, 4, 8, 16, 32), config=None, stride=1):
    """
    E_eta and E_phi per (mesh, order); one reference per mesh.

    Returns:
        rows with keys mesh, order, E_eta, E_phi
    """
    config = config or create_config()
    meshes = list(meshes or mesh_sequence(case.h))
    rows = []
    for h in meshes:
        mesh_case = case.with_overrides(h=h)
        reference = run_reference(mesh_case, config, order=max(orders), stride=stride)
        for order in orders:
            record = run_case(mesh_case.with_overrides(pade_order=order), config, stride=stride)
            summary = attach_errors(record, reference)
            rows.append({'mesh': h, 'order': order, 'E_eta': summary.E_eta, 'E_phi': summary.E_phi})
            logger.info(f"Study {case.id}: h={h} N={order} E_eta={summary.E_eta} E_phi={summary.E_phi}")
    return rows


def reduction_study(case, orders, keep_fractions, config=None, stride=1):
    """
    Energies and, when the case has a reference, errors per (order, keep_fraction).
    """
    config = config or create_config()
    reference = None
    if case.l_ref is not None:
        reference = run_reference(case, config, order=max(orders), stride=stride)
    rows = []
    for order in orders:
        for fraction in keep_fractions:
            variant = case.with_overrides(pade_order=order, keep_fraction=fraction)
            record = run_case(variant, config, stride=stride, record_fields=reference is not None)
            E_eta = E_phi = None
            if reference is not None:
                summary = attach_errors(record, reference)
                E_eta, E_phi = summary.E_eta, summary.E_phi
            rows.append({
                'order': order,
                'keep_fraction': fraction,
                'active_terms': len(reduction_active_set(order, fraction)),
                'E_eta': E_eta,
                'E_phi': E_phi,
                'E_surface_final': float(record.E_surface[-1]),
                'E_basin_final': float(record.E_basin[-1]),
            })
    return rows


def small_time_step_study(config=None, variants=None, stride=1, interpretation='semi', build=None):
    """
    Obstacle case with (dt, keep_fraction) variants a..d; energies on x > 0.

    Args:
        build: optional callable variant -> CaseSpec replacing the profile-adjusted catalog variant

    Returns:
        (rows, records) with one summary row and one RunRecord per variant
    """
    config = config or create_config()
    rows, records = [], {}
    for variant in variants or sorted(SPECIAL_VARIANTS):
        if build is not None:
            case = build(variant)
        else:
            case = apply_profile(special_case(variant, interpretation), config)
        record = run_case(case, config, stride=stride, record_fields=False, x_interval=(0.0, case.l))
        surface = record.series['E_surface_sub']
        basin = record.series['E_basin_sub']
        rows.append({
            'variant': variant,
            'dt': case.dt,
            'keep_fraction': case.keep_fraction,
            'active_terms': record.metadata['active_terms'],
            'E_surface_sub_final': float(surface[-1]),
            'E_basin_sub_final': float(basin[-1]),
            'E_surface_sub_max': float(surface.max()),
            'E_basin_sub_max': float(basin.max()),
        })
        records[variant] = record
    return rows, records
