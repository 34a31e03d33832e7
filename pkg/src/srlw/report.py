"""Tabular experiment reports with deterministic CSV serialization.

Every experiment family returns an ExperimentReport: named columns, ordered
rows, the fully resolved configuration, and any flags raised.  CSV output is
byte-reproducible: a single '#' comment line with the sorted config, then
the header, then rows with floats at 17 significant digits.
"""

import numpy as np

__all__ = ["ExperimentReport", "format_value"]


def format_value(x):
    """Deterministic cell formatting: ints verbatim, floats at 17 sig digits."""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


class ExperimentReport:
    """Rows of an experiment sweep plus flags and a one-line summary."""

    def __init__(self, columns, rows, config, flags=None, summary="", warnings=None):
        self.columns = list(columns)
        self.rows = [tuple(r) for r in rows]
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError("row width does not match column count")
        self.config = dict(config)
        self.flags = dict(flags or {})
        self.summary = summary
        self.warnings = list(warnings or [])

    def column(self, name):
        """One column as a list, by header name."""
        k = self.columns.index(name)
        return [r[k] for r in self.rows]

    def config_line(self):
        parts = [f"{k}={self.config[k]}" for k in sorted(self.config)]
        return "# " + " ".join(parts)

    def to_csv_text(self):
        lines = [self.config_line(), ",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(format_value(x) for x in row))
        return "\n".join(lines) + "\n"

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_text())

    def summary_line(self):
        return self.summary if self.summary else f"{len(self.rows)} rows"
