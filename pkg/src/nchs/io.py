"""Text formats for matrices, certificates and bound reports.

Everything is JSON with an explicit ``schema`` tag.  Rationals are reduced
``"p/q"`` strings (``"p"`` when integral); words are arrays of 1-based
letters.  Writers are deterministic so a document re-serializes to the same
bytes.
"""
from __future__ import annotations

import json
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from .bounds import BoundReport
from .certify import SOHSCertificate
from .gram import RatMatrix
from .polynomials import NCPoly, rat_str

CERT_SCHEMA = "nchs-certificate/1"
MATRIX_SCHEMA = "nchs-matrix/1"
BOUND_SCHEMA = "nchs-bound/1"

_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")


class FormatError(ValueError):
    """A document is malformed or violates its schema."""


def parse_rat(s: str) -> Fraction:
    """Parse ``[sign]digits[/digits]``; floats and other spellings are rejected."""
    if not isinstance(s, str) or not _RAT.match(s.strip()):
        raise FormatError(f"not an exact rational: {s!r}")
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise FormatError(f"zero denominator in {s!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def decimal_str(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _dumps_line(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def certificate_to_text(cert: SOHSCertificate) -> str:
    lines = [
        "{",
        f'  "schema": {_dumps_line(CERT_SCHEMA)},',
        f'  "n": {cert.n},',
        f'  "d": {cert.d},',
        f'  "target": {_dumps_line({"kind": cert.kind, "mu": rat_str(cert.mu)})},',
        '  "terms": [',
    ]
    for t, (lam, s) in enumerate(cert.terms):
        lines.append(f'    {{"weight": {_dumps_line(rat_str(lam))}, "poly": [')
        items = s.items()
        for i, (w, c) in enumerate(items):
            entry = _dumps_line({"word": list(w), "coeff": rat_str(c)})
            lines.append(f"      {entry}" + ("," if i + 1 < len(items) else ""))
        lines.append("    ]}" + ("," if t + 1 < len(cert.terms) else ""))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def _require(cond, msg):
    if not cond:
        raise FormatError(msg)


def _int_field(doc, key, minimum=0) -> int:
    v = doc.get(key)
    _require(isinstance(v, int) and not isinstance(v, bool) and v >= minimum, f"bad {key!r}: {v!r}")
    return v


def certificate_from_text(text: str) -> SOHSCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from e
    _require(isinstance(doc, dict), "top level must be an object")
    _require(doc.get("schema") == CERT_SCHEMA, f"unknown schema {doc.get('schema')!r}")
    n = _int_field(doc, "n", 1)
    d = _int_field(doc, "d", 0)
    target = doc.get("target")
    _require(isinstance(target, dict), "missing target")
    kind = target.get("kind")
    _require(kind in ("nchs", "nchs-minus-mu"), f"unknown target kind {kind!r}")
    mu = parse_rat(target.get("mu", "0"))
    _require(kind == "nchs-minus-mu" or mu == 0, "target kind 'nchs' requires mu = 0")
    terms_doc = doc.get("terms")
    _require(isinstance(terms_doc, list), "terms must be a list")
    terms = []
    for t in terms_doc:
        _require(isinstance(t, dict) and isinstance(t.get("poly"), list), "bad term")
        lam = parse_rat(t.get("weight"))
        coeffs = {}
        for entry in t["poly"]:
            _require(isinstance(entry, dict), "bad poly entry")
            w = entry.get("word")
            _require(
                isinstance(w, list)
                and all(isinstance(a, int) and not isinstance(a, bool) and 1 <= a <= n for a in w),
                f"bad word {w!r}",
            )
            w = tuple(w)
            _require(w not in coeffs, f"duplicate word {list(w)}")
            coeffs[w] = parse_rat(entry.get("coeff"))
        terms.append((lam, NCPoly(n, coeffs)))
    return SOHSCertificate(n, d, terms, mu, kind)


def write_certificate(cert: SOHSCertificate, path) -> str:
    text = certificate_to_text(cert)
    Path(path).write_text(text)
    return text


def read_certificate(path) -> SOHSCertificate:
    return certificate_from_text(Path(path).read_text())


def matrix_to_text(M: RatMatrix, meta: dict | None = None) -> str:
    head = {"schema": MATRIX_SCHEMA, **(meta or {})}
    lines = ["{"]
    for k, v in head.items():
        lines.append(f"  {json.dumps(k)}: {_dumps_line(v)},")
    if M.labels is not None:
        lines.append(f'  "labels": {_dumps_line([list(x) for x in M.labels])},')
    lines.append('  "rows": [')
    rows = M.to_strings()
    for i, r in enumerate(rows):
        lines.append("    " + _dumps_line(r) + ("," if i + 1 < len(rows) else ""))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> RatMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from e
    _require(isinstance(doc, dict) and doc.get("schema") == MATRIX_SCHEMA, "not a matrix document")
    rows = doc.get("rows")
    _require(isinstance(rows, list) and all(isinstance(r, list) for r in rows), "bad rows")
    labels = doc.get("labels")
    labels = [tuple(x) for x in labels] if labels is not None else None
    try:
        return RatMatrix([[parse_rat(x) for x in r] for r in rows], labels)
    except ValueError as e:
        raise FormatError(str(e)) from e


def bound_report_dict(r: BoundReport) -> dict:
    exact = {
        "mu": r.mu_closed,
        "mu_schur": r.mu_schur,
        "rho0": r.rho0,
        "rho1": r.rho1,
        "scalar_bound": r.scalar_bound,
        "hunter_bound": r.hunter_bound,
        "limit_bound": r.limit_bound,
    }
    out = {"schema": BOUND_SCHEMA, "n": r.n, "d": r.d}
    for k, v in exact.items():
        out[k] = rat_str(v)
        out[k + "_decimal"] = decimal_str(v)
    out.update(
        delta=r.delta,
        k_dim=r.k_dim,
        schur_checked=r.schur_checked,
        improves_hunter=r.improves_hunter,
    )
    return out
