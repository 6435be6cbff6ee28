"""Built-in structure-constant algebras and their manifest format.

Manifest grammar (one statement per line, ``#`` comments)::

    cproj-algebra v1
    name = <identifier>
    basis = e1 e2 ...
    params = lam ...              # optional commuting parameters
    zplus = e1 e2                 # optional Z2 grading (+ part)
    zminus = e3 e4                #                     (- part)
    grade <label> = <int>         # optional integer grading, per label
    bracket [ei,ej] = <linear combination of basis labels>

Bracket right-hand sides use the polynomial grammar over parameters and basis
labels; every monomial must be linear in the basis labels.
"""

from __future__ import annotations

import os
import re

from .parse import ParseError, parse_poly
from .poly import LaurentPoly, VarTable
from .structlie import StructAlgebra

_BRACKET = re.compile(r"bracket\s*\[\s*(\w+)\s*,\s*(\w+)\s*\]\s*=\s*(.*)$")

DATA_DIR = os.path.join(os.path.dirname(__file__), "catalog_data")


def data_dir():
    return os.environ.get("CPROJ_CATALOG", DATA_DIR)


def parse_algebra_manifest(text, name_hint="") -> StructAlgebra:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "cproj-algebra v1":
        raise ParseError("expected header 'cproj-algebra v1'", 1, 1)
    name = name_hint
    labels = None
    params = []
    zplus, zminus = [], []
    grading = {}
    raw_brackets = []
    for ln, line in enumerate(lines[1:], start=2):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = _BRACKET.match(line)
        if m:
            raw_brackets.append((ln, m.group(1), m.group(2), m.group(3)))
            continue
        if "=" not in line:
            raise ParseError(f"cannot parse statement {line!r}", ln, 1)
        key, val = (t.strip() for t in line.split("=", 1))
        if key == "name":
            name = val
        elif key == "basis":
            labels = val.split()
        elif key == "params":
            params = val.split()
        elif key == "zplus":
            zplus = val.split()
        elif key == "zminus":
            zminus = val.split()
        elif key.startswith("grade "):
            grading[key[len("grade "):].strip()] = int(val)
        else:
            raise ParseError(f"unknown key {key!r}", ln, 1)
    if not labels:
        raise ParseError("manifest declares no basis", 1, 1)
    table = VarTable(list(params) + list(labels))
    index = {l: i for i, l in enumerate(labels)}
    ptable = VarTable(params) if params else None
    bracket = {}
    for ln, li, lj, rhs in raw_brackets:
        if li not in index or lj not in index:
            raise ParseError(f"unknown basis label in [{li},{lj}]", ln, 1)
        poly = parse_poly(rhs, table, line=ln)
        vec = _split_linear(poly, table, labels, params, ptable, ln)
        key = (index[li], index[lj])
        if key in bracket or (key[1], key[0]) in bracket:
            raise ParseError(f"duplicate bracket [{li},{lj}]", ln, 1)
        bracket[key] = vec
    z2 = None
    if zplus or zminus:
        if set(zplus) | set(zminus) != set(labels):
            raise ParseError("Z2 grading must cover the basis", 1, 1)
        z2 = {l: 1 for l in zplus}
        z2.update({l: -1 for l in zminus})
    return StructAlgebra(
        labels,
        bracket,
        params=ptable,
        grading=grading or None,
        z2=z2,
        name=name,
    )


def _split_linear(poly, table, labels, params, ptable, ln):
    """Split a polynomial over params+labels into {label index: coeff}."""
    npar = len(params)
    vec = {}
    for exps, c in poly.terms.items():
        lab_part = exps[npar:]
        ones = [i for i, e in enumerate(lab_part) if e]
        if len(ones) != 1 or lab_part[ones[0]] != 1:
            raise ParseError(
                "bracket value must be linear in the basis labels", ln, 1
            )
        k = ones[0]
        if ptable is not None:
            coeff = LaurentPoly(ptable, {tuple(exps[:npar]): c})
            prev = vec.get(k)
            vec[k] = coeff if prev is None else prev + coeff
        else:
            prev = vec.get(k)
            vec[k] = c if prev is None else prev + c
    return vec


def builtin_algebra(name) -> StructAlgebra:
    """Load a built-in algebra manifest by catalog name."""
    fname = ALGEBRA_FILES.get(name)
    if fname is None:
        raise KeyError(
            f"unknown algebra {name!r}; available: {sorted(ALGEBRA_FILES)}"
        )
    path = os.path.join(data_dir(), fname)
    with open(path, "r", encoding="ascii") as fh:
        return parse_algebra_manifest(fh.read(), name_hint=name)


ALGEBRA_FILES = {
    "s": "alg_cproj8.alg",
    "s-prime": "alg_isom6.alg",
    "s-double-prime": "alg_isom8.alg",
    "lambda-family": "alg_lambda_family.alg",
    "a3-family": "alg_lambda_family.alg",
    "sl2": "alg_sl2.alg",
}
