"""Versioned CSV tables.

Line 1 is ``# vmf-fading v1 <key=value ...>`` echoing every parameter,
line 2 holds the column names, numbers use 17 significant digits and
lines end in ``\\n``.
"""

import numpy as np

MAGIC = "# vmf-fading v1"


def format_table(columns, rows, echo):
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    lines = [f"{MAGIC} {echo}".rstrip(), ",".join(columns)]
    for row in rows:
        lines.append(",".join(format(v, ".17g") for v in row))
    return "\n".join(lines) + "\n"


def write_table(path, columns, rows, echo):
    text = format_table(columns, rows, echo)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text


def read_table(path):
    """Return ``(params, columns, data)``; ``params`` maps header keys to strings."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        columns = fh.readline().rstrip("\n").split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if not header.startswith(MAGIC):
        raise ValueError(f"{path}: not a vmf-fading v1 table")
    params = dict(
        tok.split("=", 1) for tok in header[len(MAGIC):].split() if "=" in tok
    )
    return params, columns, data
