"""
Line plots of CSV columns as standalone SVG files.

The Agg canvas with a fixed SVG hash salt and no date metadata makes
repeated plots of the same data byte-identical.
"""
import csv
import logging
import os

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..errors import ConfigError  # noqa: E402

logger = logging.getLogger(__name__)

SVG_HASH_SALT = 'habc'


def read_columns(csv_path):
    """
    Numeric columns of a CSV file keyed by header name; empty cells become nan.
    """
    try:
        with open(csv_path, newline='') as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            rows = [row for row in reader if row]
    except OSError as e:
        raise ConfigError(f"cannot read {csv_path}: {e}", key="csv")
    if not header:
        raise ConfigError(f"{csv_path} has no header row", key="csv")
    columns = {}
    for index, name in enumerate(header):
        cells = [row[index] if index < len(row) else '' for row in rows]
        try:
            columns[name] = np.array([float(cell) if cell != '' else np.nan for cell in cells])
        except ValueError:
            # Non-numeric columns (case ids) cannot be plotted
            columns[name] = None
    return columns


def _numeric(columns, name, csv_path):
    if name not in columns:
        raise ConfigError(f"column '{name}' not found in {csv_path} (have {list(columns)})",
                          key="columns")
    values = columns[name]
    if values is None:
        raise ConfigError(f"column '{name}' of {csv_path} is not numeric", key="columns")
    return values


def emit_line_plot(csv_path, columns=None, x=None, log=False, title=None, output=None):
    """
    Plot columns of a CSV against its x column.

    Args:
        csv_path: input table
        columns: y column names (default: every numeric column but x)
        x: x column name (default: the first column)
        log: log10 y-axis; every plotted value must be positive
        output: SVG path (default: csv_path with an .svg suffix)

    Returns:
        path of the SVG file
    """
    table = read_columns(csv_path)
    x = x or next(iter(table))
    x_values = _numeric(table, x, csv_path)
    if columns is None:
        columns = [name for name, values in table.items() if name != x and values is not None]
    if not columns:
        raise ConfigError(f"no column to plot in {csv_path}", key="columns")

    series = {name: _numeric(table, name, csv_path) for name in columns}
    if log:
        for name, values in series.items():
            finite = values[~np.isnan(values)]
            if np.any(finite <= 0.0):
                raise ConfigError(f"log axis needs positive values; column '{name}' has some <= 0",
                                  key="log")

    output = output or os.path.splitext(csv_path)[0] + '.svg'
    os.makedirs(os.path.dirname(os.path.abspath(output)), exist_ok=True)
    with plt.rc_context({'svg.hashsalt': SVG_HASH_SALT, 'svg.fonttype': 'none'}):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        try:
            for name, values in series.items():
                ax.plot(x_values, values, label=name, linewidth=1.2)
            if log:
                ax.set_yscale('log')
            ax.set_xlabel(x)
            ax.grid(True, alpha=0.3)
            ax.legend()
            if title:
                ax.set_title(title)
            fig.tight_layout()
            fig.savefig(output, format='svg', metadata={'Date': None})
        finally:
            plt.close(fig)
    logger.info(f"Wrote {output}")
    return output
