"""
Nodal field snapshots as CSV (x, y, value)
"""
import csv
import os

import numpy as np

HEADER = ('x', 'y', 'value')


def format_float(value, digits=17):
    return f"{float(value):.{digits}g}"


def write_snapshot(path, coords, values, digits=17):
    """
    Write one nodal field.

    Args:
        path: destination CSV
        coords: (n, 2) node coordinates, or (n,) x coordinates for a surface field
        values: (n,) nodal values
    """
    coords = np.asarray(coords, dtype=float)
    values = np.asarray(values, dtype=float)
    if coords.ndim == 1:
        coords = np.column_stack((coords, np.zeros_like(coords)))
    if len(coords) != len(values):
        raise ValueError(f"{len(coords)} coordinates for {len(values)} values")
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(HEADER)
        for (x, y), v in zip(coords, values):
            writer.writerow((format_float(x, digits), format_float(y, digits), format_float(v, digits)))
    return path
