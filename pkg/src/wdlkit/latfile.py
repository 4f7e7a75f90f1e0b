"""Reader and writer for the line-based ``.lat`` lattice format.

::

    elements 0 a b 1        # first line; distinct whitespace-free names
    cover 0 a               # lower upper
    up a b                  # a^△ = b
    down a b                # a^▽ = b

Without any ``up``/``down`` line the trivial dicomplementation is attached.
Partial tables are rejected.
"""

from __future__ import annotations

from .errors import FormatError, WdlError
from .lattice import FiniteLattice
from .wdl import Dicomplementation, trivial_dicomplementation


def parse_lat(text: str) -> Dicomplementation:
    names = None
    covers = []
    tables = {"up": {}, "down": {}}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        key, args = tokens[0], tokens[1:]
        if names is None:
            if key != "elements":
                raise FormatError("first statement must be 'elements'", lineno)
            if not args:
                raise FormatError("empty carrier", lineno)
            if len(set(args)) != len(args):
                raise FormatError("duplicate element name", lineno)
            names = args
            known = set(names)
            continue
        if key == "elements":
            raise FormatError("'elements' given twice", lineno)
        if key not in ("cover", "up", "down"):
            raise FormatError(f"unknown keyword {key!r}", lineno)
        if len(args) != 2:
            raise FormatError(f"'{key}' takes exactly two names", lineno)
        for a in args:
            if a not in known:
                raise FormatError(f"undeclared element {a!r}", lineno)
        if key == "cover":
            covers.append(tuple(args))
        else:
            table = tables[key]
            if args[0] in table and table[args[0]] != args[1]:
                raise FormatError(f"conflicting {key} value for {args[0]}", lineno)
            table[args[0]] = args[1]
    if names is None:
        raise FormatError("missing 'elements' line")
    try:
        L = FiniteLattice.from_covers(names, covers)
    except WdlError:
        raise
    up, down = tables["up"], tables["down"]
    if not up and not down:
        return trivial_dicomplementation(L)
    for key, table in tables.items():
        missing = [n for n in names if n not in table]
        if missing:
            raise FormatError(f"partial {key} table: no value for {', '.join(missing)}")
    return Dicomplementation(
        L,
        [L.index[up[n]] for n in L.names],
        [L.index[down[n]] for n in L.names],
    )


def read_lat(path) -> Dicomplementation:
    with open(path, encoding="utf-8") as fh:
        return parse_lat(fh.read())


def has_declared_tables(text: str) -> bool:
    for raw in text.splitlines():
        tokens = raw.split("#", 1)[0].split()
        if tokens and tokens[0] in ("up", "down"):
            return True
    return False
