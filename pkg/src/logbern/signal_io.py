"""Signal files and deterministic CSV output.

A signal file is a CSV preceded by one header comment::

    # logbern-signal schema=samples n=4 mu=0.5
    k,y
    0,1.5
    ...

``schema=samples`` rows are ``(k, y_k)`` with k = 0..n contiguous;
``schema=function`` rows are ``(x, f(x))`` with x = k/n. ``mu`` is optional.
"""
import csv
import math
import os
import sys

import numpy as np

from .errors import InputError

FLOAT_FORMAT = "{:.12g}"
SCHEMAS = {"samples": ("k", "y"), "function": ("x", "f")}


def fmt(v):
    v = float(v)
    if math.isnan(v):
        return "nan"
    return FLOAT_FORMAT.format(v)


def write_csv(path, header, columns):
    """Write columns as CSV; ``path`` of None or '-' means stdout.

    Files are written to a temporary sibling and renamed into place.
    """
    rows = zip(*columns)
    if path in (None, "-"):
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])
        return
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])
    os.replace(tmp, path)


def write_signal_file(path, values, schema="samples", mu=None):
    values = np.asarray(values, dtype=float)
    n = values.shape[0] - 1
    head = f"# logbern-signal schema={schema} n={n}"
    if mu is not None:
        head += f" mu={fmt(mu)}"
    first = np.arange(n + 1) if schema == "samples" else np.arange(n + 1) / n
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as fh:
        fh.write(head + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SCHEMAS[schema])
        for a, b in zip(first, values):
            w.writerow([int(a) if schema == "samples" else fmt(a), fmt(b)])
    os.replace(tmp, path)


def read_signal_file(path):
    """Parse a signal file; returns ``(values, n, mu_or_None, schema)``."""
    try:
        with open(path, newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if not lines or not lines[0].startswith("#"):
        raise InputError("missing '# logbern-signal ...' header line")
    meta = {}
    for tok in lines[0].lstrip("#").split()[1:]:
        if "=" in tok:
            key, val = tok.split("=", 1)
            meta[key] = val
    schema = meta.get("schema", "samples")
    if schema not in SCHEMAS:
        raise InputError(f"unknown schema {schema!r}")
    try:
        n = int(meta["n"])
    except (KeyError, ValueError):
        raise InputError("header must declare an integer n") from None
    mu = float(meta["mu"]) if "mu" in meta else None
    reader = list(csv.reader(lines[1:]))
    if not reader or tuple(c.strip() for c in reader[0]) != SCHEMAS[schema]:
        raise InputError(f"expected column header {','.join(SCHEMAS[schema])}")
    body = [r for r in reader[1:] if r]
    if len(body) != n + 1:
        raise InputError(f"declared n={n} but found {len(body)} rows")
    values = np.empty(n + 1)
    for k, row in enumerate(body):
        try:
            key, val = float(row[0]), float(row[1])
        except (IndexError, ValueError):
            raise InputError(f"row {k}: cannot parse {row}") from None
        expected = k if schema == "samples" else k / n
        if abs(key - expected) > 1e-9:
            raise InputError(f"row {k}: expected index {expected}, got {row[0]}")
        if not math.isfinite(val):
            raise InputError(f"row {k}: value is not finite")
        values[k] = val
    return values, n, mu, schema
