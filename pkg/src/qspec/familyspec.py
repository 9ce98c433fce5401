"""Mini-grammar for apex families, e.g. ``"C3+C4+P5+K2*2"``.

Atoms are separated by ``+`` or ``,``:

* ``C<k>``     a cycle of length k (``C2`` is a digon),
* ``P<l>``     a path on l vertices,
* ``K2``       a single K2, same as ``P2``,
* ``<atom>*<m>``  m copies of any atom, e.g. ``C3*9`` or ``K2*12``.

The apex ``K1 ∨ (...)`` is implied.  An empty string is ``K1`` alone.
"""
from __future__ import annotations

import re

from .errors import DomainError
from .graph_core import ApexFamily

_ATOM = re.compile(r"^(?:C(\d+)|P(\d+)|(K)2)(?:\*(\d+))?$")


def parse_family(text: str) -> ApexFamily:
    cycles: list[int] = []
    paths: list[int] = []
    text = text.strip()
    if not text:
        return ApexFamily()
    for raw in re.split(r"[+,]", text):
        atom = raw.strip().replace(" ", "")
        match = _ATOM.match(atom)
        if match is None:
            raise DomainError(f"unrecognised family atom {raw!r} in {text!r}")
        cyc, path, _, reps = match.groups()
        reps = int(reps) if reps is not None else 1
        if cyc is not None:
            cycles.extend([int(cyc)] * reps)
        else:
            paths.extend([int(path) if path is not None else 2] * reps)
    return ApexFamily(tuple(cycles), tuple(paths))


def format_family(fam: ApexFamily) -> str:
    atoms = [f"C{s}" for s in fam.cycles]
    run = 0
    for l in fam.paths:
        if l == 2:
            run += 1
            continue
        if run:
            atoms.append(f"K2*{run}")
            run = 0
        atoms.append(f"P{l}")
    if run:
        atoms.append(f"K2*{run}")
    return "+".join(atoms)
