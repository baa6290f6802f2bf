"""
CSV tables written by the commands.

Floats carry 17 significant digits so repeated runs diff byte for byte.
"""
import csv
import logging
import os

import numpy as np

from ..fem.snapshot import format_float

logger = logging.getLogger(__name__)

ENERGY_COLUMNS = ('t', 'E_surface', 'E_basin')
ERROR_COLUMNS = ('t', 'e_eta', 'e_phi')
SUMMARY_COLUMNS = ('case', 'config_hash', 'pade_order', 'active_terms', 'keep_fraction', 'h', 'dt',
                   'dimension', 'E_eta', 'E_phi', 'unstable')


def format_cell(value, digits=17):
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value, digits)
    return str(value)


def write_table(path, columns, rows, digits=17):
    """
    Write dict rows under a fixed header; missing keys become empty cells.

    Returns:
        path
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_cell(row.get(column), digits) for column in columns])
    logger.info(f"Wrote {path}")
    return path


def energy_table(record):
    """Columns and rows of the energies, sub-domain series appended in name order."""
    names = sorted(record.series)
    columns = ENERGY_COLUMNS + tuple(names)
    rows = []
    for k, t in enumerate(record.times):
        row = {'t': t, 'E_surface': record.E_surface[k], 'E_basin': record.E_basin[k]}
        row.update({name: record.series[name][k] for name in names})
        rows.append(row)
    return columns, rows


def error_table(record):
    rows = []
    for k, t in enumerate(record.times):
        rows.append({
            't': t,
            'e_eta': None if record.e_eta is None else record.e_eta[k],
            'e_phi': None if record.e_phi is None else record.e_phi[k],
        })
    return ERROR_COLUMNS, rows


def summary_row(record):
    row = {'case': record.case_id}
    row.update({key: record.metadata.get(key) for key in SUMMARY_COLUMNS[1:]})
    return row


def write_energies(path, record, digits=17):
    columns, rows = energy_table(record)
    return write_table(path, columns, rows, digits)


def write_errors(path, record, digits=17):
    columns, rows = error_table(record)
    return write_table(path, columns, rows, digits)


def write_summary(path, records, digits=17):
    return write_table(path, SUMMARY_COLUMNS, [summary_row(r) for r in records], digits)
