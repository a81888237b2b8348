"""Relaxation-set files and CSV curve output.

Set file layout (base units, 17 significant digits so doubles round-trip)::

    # relaxfit-set kappa0=4.0157739601153330e-10 provenance=3f2a...
    1 6.2831853071795862e+05 <density> <step> <weight>
    ...

Literature parameter sets may instead list two columns per line,
``omega_nu weight``, after the same header line.  A header with no
mechanism lines describes a lossless medium; a file without a header is
rejected.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile

import numpy as np

from .core import RelaxfitError
from .discrete import RelaxationMechanism, RelaxationSet

HEADER_TAG = "# relaxfit-set"
CSV_COLUMNS = (
    "f_Hz",
    "omega_rad_s",
    "alpha_np_per_m",
    "alpha_db_per_cm",
    "c_p_m_per_s",
    "rel_diff",
    "rel_diff_normalized",
)


class SetFileError(RelaxfitError):
    """Malformed relaxation-set file."""


def _fmt(x):
    return f"{x:.16e}"


def provenance_hash(rset: RelaxationSet) -> str:
    info = {"mode": rset.mode, "scale": repr(rset.scale)}
    if rset.target is not None:
        t = rset.target
        info["target"] = [repr(v) for v in (t.eta, t.alpha_ref, t.omega_ref, t.omega_lo, t.omega_hi)]
    if rset.source is not None:
        s = rset.source
        info["source"] = [repr(v) for v in (s.alpha, s.beta, s.tau_sigma, s.tau_epsilon, s.kappa0)]
    blob = json.dumps(info, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def format_set(rset: RelaxationSet) -> str:
    lines = [f"{HEADER_TAG} kappa0={_fmt(rset.kappa0)} provenance={provenance_hash(rset)}"]
    for nu, m in enumerate(rset.mechanisms, start=1):
        lines.append(f"{nu} {_fmt(m.omega_nu)} {_fmt(m.density)} {_fmt(m.step)} {_fmt(m.weight)}")
    return "\n".join(lines) + "\n"


def parse_set(text: str):
    """Parse set-file text.

    Returns
    -------
    rset : RelaxationSet
    provenance : str
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SetFileError("set file is empty")
    header = lines[0]
    if not header.startswith(HEADER_TAG):
        raise SetFileError(f"set file must start with '{HEADER_TAG}'")
    fields = dict(tok.split("=", 1) for tok in header[len(HEADER_TAG):].split() if "=" in tok)
    try:
        kappa0 = float(fields["kappa0"])
    except (KeyError, ValueError):
        raise SetFileError("header lacks a valid kappa0=<value>") from None
    provenance = fields.get("provenance", "none")

    mechs = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            continue
        parts = line.split()
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise SetFileError(f"line {lineno}: non-numeric field") from None
        try:
            if len(vals) == 5:
                m = RelaxationMechanism(vals[1], vals[2], vals[3])
                if not np.isclose(m.weight, vals[4], rtol=1e-12, atol=0.0):
                    raise SetFileError(f"line {lineno}: weight != density*step")
            elif len(vals) == 2:
                m = RelaxationMechanism(vals[0], vals[1] / vals[0], vals[0])
            else:
                raise SetFileError(f"line {lineno}: expected 5 or 2 columns, got {len(vals)}")
        except ValueError as exc:
            raise SetFileError(f"line {lineno}: {exc}") from None
        mechs.append(m)
    # a header without mechanism lines is a valid lossless set
    mechs.sort(key=lambda m: m.omega_nu)
    try:
        rset = RelaxationSet(tuple(mechs), kappa0)
    except (ValueError, RelaxfitError) as exc:
        raise SetFileError(str(exc)) from None
    return rset, provenance


def read_set(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_set(fh.read())
    except OSError as exc:
        raise SetFileError(f"cannot read set file: {exc}") from None


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".relaxfit-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_csv(rows) -> str:
    """CSV text with the fixed header; ``rows`` yields 7-tuples of floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()
