import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from wht.algebra import Monomial, NormalForm

# The sweep alphabet: fin(2), w, 2^w, N^w, Q (one atom occurrence each).
_ATOM_FIELDS = ("fin2", "omega", "cantor", "baire", "rationals")


def _monomial(combo: tuple[int, ...]) -> Monomial:
    counts = {f: 0 for f in _ATOM_FIELDS}
    for i in combo:
        counts[_ATOM_FIELDS[i]] += 1
    return Monomial(
        rationals=counts["rationals"],
        baire=counts["baire"],
        cantor=counts["cantor"],
        omega=counts["omega"],
        fin=2 ** counts["fin2"],
    )


def monomials_of_size(k: int) -> list[Monomial]:
    return [
        _monomial(combo)
        for combo in itertools.combinations_with_replacement(range(5), k)
    ]


def sweep_normal_forms(max_atoms: int) -> list[NormalForm]:
    """All normal forms with <= max_atoms atom occurrences from the
    five-atom alphabet (multisets of monomials, duplicates allowed)."""
    monos: list[tuple[int, Monomial]] = []
    for k in range(1, max_atoms + 1):
        monos.extend((k, m) for m in monomials_of_size(k))

    out: list[NormalForm] = []

    def rec(start: int, budget: int, acc: list[Monomial]) -> None:
        if acc:
            out.append(NormalForm(tuple(sorted(acc, key=Monomial.sort_key))))
        for i in range(start, len(monos)):
            size, m = monos[i]
            if size > budget:
                continue
            acc.append(m)
            rec(i, budget - size, acc)
            acc.pop()

    rec(0, max_atoms, [])
    return out
