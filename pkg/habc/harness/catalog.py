"""
Built-in cases and profile adjustments.

Table values: h = 0.0025 m, dt = 0.002 s, p = 4, water density and gravity.
"""
import logging

from ..errors import ConfigError
from ..fem.grid import EllipseMask
from ..models.case import CaseSpec
from ..models.params import PhysicalParams
from ..utils.validators import divides

logger = logging.getLogger(__name__)

TABLE_H = 0.0025
TABLE_DT = 0.002
WATER_SIGMA = 0.075

# Material presets: name -> PhysicalParams keyword values
PARAMETER_PRESETS = {
    'water': dict(rho=1000.0, g=9.81, sigma=WATER_SIGMA, epsilon=1e-3, c_f=1500.0),
    'helium-1': dict(rho=125.0, g=9.81, sigma=WATER_SIGMA / 100.0, epsilon=1e-3, c_f=200.0),
    'helium-2': dict(rho=125.0, g=9.81, sigma=WATER_SIGMA / 1000.0, epsilon=1e-3, c_f=20.0),
}

# Obstacle-study variants: (time-step divisor, keep fraction)
SPECIAL_VARIANTS = {
    'a': (1, 0.0005),
    'b': (2, 0.001),
    'c': (4, 0.002),
    'd': (4, 0.004),
}
SPECIAL_ORDER = 16384


def parameter_preset(name):
    try:
        return PhysicalParams(**PARAMETER_PRESETS[name])
    except KeyError:
        raise ConfigError(f"unknown parameter preset '{name}' (expected one of {sorted(PARAMETER_PRESETS)})",
                          key="preset")


def _table_case(case_id, c_f, sigma, T, epsilon, l_ref, pade_order, keep_fraction=1.0, description=""):
    return CaseSpec(
        id=case_id,
        params=PhysicalParams(rho=1000.0, g=9.81, sigma=sigma, epsilon=epsilon, c_f=c_f),
        T=T,
        l=0.1,
        l_ref=l_ref,
        T_e=0.1,
        T_excit=0.1,
        A=1000.0,
        n_f=20,
        x0=0.0,
        h=TABLE_H,
        dt=TABLE_DT,
        p=4,
        pade_order=pade_order,
        keep_fraction=keep_fraction,
        description=description,
    )


def special_case(variant='a', interpretation='semi'):
    """Obstacle study: elliptical body below the surface, long excitation, water celerity."""
    try:
        divisor, keep_fraction = SPECIAL_VARIANTS[variant]
    except KeyError:
        raise ConfigError(f"unknown obstacle-study variant '{variant}'", key="case")
    l = 0.1
    return CaseSpec(
        id=f"special-{variant}",
        params=PhysicalParams(rho=1000.0, g=9.81, sigma=WATER_SIGMA, epsilon=1e-3, c_f=1500.0),
        T=4.5,
        l=l,
        l_ref=None,
        depth=l / 4.0,
        T_e=0.2,
        T_excit=12 * 0.2,
        A=1000.0,
        n_f=20,
        x0=-l / 2.0,
        h=TABLE_H,
        dt=TABLE_DT / divisor,
        p=4,
        pade_order=SPECIAL_ORDER,
        keep_fraction=keep_fraction,
        obstacle=EllipseMask.from_lengths((0.05, -0.01), (0.01, 0.005), interpretation),
        description=f"obstacle study, dt/{divisor}, keep {keep_fraction}",
    )


def case_catalog():
    """All built-in cases keyed by id."""
    cases = {
        '1': _table_case('1', 1.0, 0.0, 1.5, 0.0, 1.0, 32, description="no surface tension"),
        '11': _table_case('11', 1.0, WATER_SIGMA, 0.9, 1e-3, 0.5, 32, description="surface tension, eps 1e-3"),
        '12': _table_case('12', 1.0, WATER_SIGMA, 0.9, 1e-9, 0.5, 32, description="surface tension, eps 1e-9"),
        '211': _table_case('211', 100.0, WATER_SIGMA, 0.9, 1e-3, 0.5, 1024, 0.06,
                           description="c_f = 100 with reduction"),
        '311': _table_case('311', 1000.0, WATER_SIGMA, 0.9, 1e-3, None, 16384, 0.003,
                           description="c_f = 1000 with reduction"),
    }
    for variant in SPECIAL_VARIANTS:
        cases[f"special-{variant}"] = special_case(variant)
    cases['special'] = cases['special-a']
    return cases


def get_case(case_id):
    catalog = case_catalog()
    try:
        return catalog[str(case_id)]
    except KeyError:
        raise ConfigError(f"unknown case '{case_id}' (expected one of {sorted(catalog)})", key="case")


def pick_element_size(case, sizes):
    """First size dividing every length of the case (and of its reference)."""
    lengths = [2.0 * case.l, case.depth]
    if case.l_ref is not None:
        lengths.append(2.0 * case.l_ref)
    for h in sizes:
        if all(divides(length, h) for length in lengths):
            return h
    raise ConfigError(f"none of the element sizes {list(sizes)} divides the geometry of case {case.id}",
                      key="h")


def apply_profile(case, config):
    """
    Adjust a case to a profile: element size with fallbacks and Padé order cap.
    """
    changes = {}
    if config.ELEMENT_SIZE is not None:
        sizes = (config.ELEMENT_SIZE,) + tuple(config.ELEMENT_SIZE_FALLBACKS)
        h = pick_element_size(case, sizes)
        if h != case.h:
            changes['h'] = h
        if h != config.ELEMENT_SIZE:
            logger.warning(f"Case {case.id}: element size {config.ELEMENT_SIZE} does not divide "
                           f"the geometry, using {h}")
    if config.PADE_ORDER_CAP is not None and case.pade_order > config.PADE_ORDER_CAP:
        changes['pade_order'] = config.PADE_ORDER_CAP
    if not changes:
        return case
    logger.info(f"Case {case.id}: {getattr(config, 'NAME', 'profile')} profile sets {changes}")
    return case.with_overrides(**changes)
