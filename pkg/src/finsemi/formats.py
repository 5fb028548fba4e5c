"""Text file formats for semigroups, identities, DFAs and product expressions.

Blank lines and anything after ``#`` are ignored everywhere.

Cayley table::

    n 3
    e 2          # optional identity
    0 0 0
    0 1 1
    0 1 2

Transformation semigroup (one generator per line, images of 0..d-1)::

    d 3
    1 2 0
    0 0 2

DFA::

    alphabet a b
    states 2
    initial 0
    accepting 1
    0 a 1
    1 a 1
    1 b 1        # missing transitions go to a fresh sink

Product expression: DFA file names alternating with marker letters,
``k.dfa a l.dfa``, on one or more lines, resolved relative to the file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator, Optional, Union

from .errors import InputError, SemigroupError
from .languages import Dfa, ProductExpression, dfa
from .semigroup import FiniteSemigroup, Transformation, from_transformations, validate
from .terms import PseudoIdentity, parse_identity_file

PathLike = Union[str, Path]


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, line in enumerate(text.splitlines(), 1):
        toks = line.split("#", 1)[0].split()
        if toks:
            yield no, toks


def _int(tok: str, no: int, path=None) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"expected an integer, got {tok!r}", no, path) from None


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", None, str(path)) from None


def parse_cayley(text: str, path=None, name: Optional[str] = None) -> FiniteSemigroup:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "n" or len(lines[0][1]) != 2:
        raise InputError("first line must be 'n <order>'", lines[0][0] if lines else 1, path)
    n = _int(lines[0][1][1], lines[0][0], path)
    if n < 1:
        raise InputError("order must be positive", lines[0][0], path)
    identity = None
    body = lines[1:]
    if body and body[0][1][0] == "e":
        if len(body[0][1]) != 2:
            raise InputError("identity line must be 'e <index>'", body[0][0], path)
        identity = _int(body[0][1][1], body[0][0], path)
        body = body[1:]
    if len(body) != n:
        raise InputError(f"expected {n} table rows, found {len(body)}",
                         body[-1][0] if body else lines[0][0], path)
    rows = []
    for no, toks in body:
        if len(toks) != n:
            raise InputError(f"row has {len(toks)} entries, expected {n}", no, path)
        rows.append([_int(t, no, path) for t in toks])
    try:
        return validate(rows, identity=identity, name=name)
    except SemigroupError as exc:
        raise InputError(f"invalid table: {exc}", None, path) from exc


def parse_transformations(text: str, path=None, cap: int = 5000,
                          name: Optional[str] = None) -> FiniteSemigroup:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "d" or len(lines[0][1]) != 2:
        raise InputError("first line must be 'd <degree>'", lines[0][0] if lines else 1, path)
    d = _int(lines[0][1][1], lines[0][0], path)
    gens = []
    for no, toks in lines[1:]:
        if len(toks) != d:
            raise InputError(f"generator has {len(toks)} images, expected {d}", no, path)
        imgs = [_int(t, no, path) for t in toks]
        if any(not 0 <= v < d for v in imgs):
            raise InputError(f"image out of range 0..{d - 1}", no, path)
        gens.append(Transformation(imgs))
    if not gens:
        raise InputError("no generators", lines[0][0], path)
    S = from_transformations(gens, cap=cap)
    S.name = name
    return S


def parse_semigroup(text: str, path=None, cap: int = 5000) -> FiniteSemigroup:
    """Cayley or transformation file, decided by the first keyword."""
    name = Path(path).stem if path else None
    first = next(_lines(text), (1, [""]))[1][0]
    if first == "n":
        return parse_cayley(text, path, name)
    if first == "d":
        return parse_transformations(text, path, cap, name)
    raise InputError("expected 'n <order>' or 'd <degree>' on the first line", 1, path)


def load_semigroup(path: PathLike, cap: int = 5000) -> FiniteSemigroup:
    return parse_semigroup(_read(path), str(path), cap)


def format_cayley(S: FiniteSemigroup) -> str:
    out = [f"n {S.order}"]
    if S.identity is not None:
        out.append(f"e {S.identity}")
    width = len(str(S.order - 1))
    out += [" ".join(str(v).rjust(width) for v in row) for row in S.rows()]
    return "\n".join(out) + "\n"


def parse_dfa(text: str, path=None) -> Dfa:
    header: dict = {}
    trans = []
    for no, toks in _lines(text):
        key = toks[0]
        if key in ("alphabet", "states", "initial", "accepting"):
            if key in header:
                raise InputError(f"repeated '{key}' line", no, path)
            header[key] = (no, toks[1:])
        elif len(toks) == 3:
            trans.append((no, toks))
        else:
            raise InputError(f"cannot read line {' '.join(toks)!r}", no, path)
    for key in ("alphabet", "states", "initial"):
        if key not in header:
            raise InputError(f"missing '{key}' line", None, path)
    alphabet = header["alphabet"][1]
    no, toks = header["states"]
    if len(toks) != 1:
        raise InputError("expected 'states <n>'", no, path)
    n = _int(toks[0], no, path)
    no, toks = header["initial"]
    if len(toks) != 1:
        raise InputError("expected 'initial <state>'", no, path)
    initial = _int(toks[0], no, path)
    no, toks = header.get("accepting", (None, []))
    accepting = [_int(t, no, path) for t in toks]
    edges = []
    for no, (p, a, q) in trans:
        p, q = _int(p, no, path), _int(q, no, path)
        if a not in alphabet:
            raise InputError(f"letter {a!r} not in the alphabet", no, path)
        if not (0 <= p < n and 0 <= q < n):
            raise InputError(f"state out of range 0..{n - 1}", no, path)
        edges.append((p, a, q))
    try:
        return dfa(alphabet, n, initial, accepting, edges)
    except ValueError as exc:
        raise InputError(str(exc), None, path) from None


def load_dfa(path: PathLike) -> Dfa:
    return parse_dfa(_read(path), str(path))


def format_dfa(d: Dfa) -> str:
    out = ["alphabet " + " ".join(d.alphabet), f"states {d.state_count}",
           f"initial {d.initial}", "accepting " + " ".join(map(str, sorted(d.accepting)))]
    for q, row in enumerate(d.delta):
        out += [f"{q} {a} {r}" for a, r in zip(d.alphabet, row)]
    return "\n".join(out) + "\n"


def parse_product(text: str, base: Optional[PathLike] = None, path=None) -> ProductExpression:
    toks = [(no, t) for no, ts in _lines(text) for t in ts]
    if len(toks) < 3 or len(toks) % 2 == 0:
        raise InputError("expected 'L0 a1 L1 ... ak Lk' with k >= 1",
                         toks[-1][0] if toks else None, path)
    root = Path(base) if base is not None else Path(".")
    factors, markers = [], []
    for i, (no, t) in enumerate(toks):
        if i % 2:
            markers.append(t)
        else:
            factors.append(load_dfa(root / t))
    try:
        return ProductExpression(tuple(factors), tuple(markers))
    except ValueError as exc:
        raise InputError(str(exc), None, path) from None


def load_product(path: PathLike) -> ProductExpression:
    return parse_product(_read(path), Path(path).parent, str(path))


def load_identities(path: PathLike) -> list[PseudoIdentity]:
    return parse_identity_file(_read(path))


def dump_json(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
