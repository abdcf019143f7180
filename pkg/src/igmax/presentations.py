"""Group presentations: triangular form, Tietze simplification, and
abelianization invariants via integer Smith normal form.

Relations are stored as equations (lhs, rhs) rather than relators, mirroring
how product-form relations b c = d are written; a relator is an equation with
empty right hand side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import (
    Word,
    format_relation,
    invert_word,
    reduce_word,
)

__all__ = [
    "GroupPresentation",
    "TriangularPresentation",
    "SimplificationResult",
    "triangularize",
    "tietze_simplify",
    "smith_normal_form",
    "abelian_invariants",
]


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        n = len(self.generators)
        for lhs, rhs in self.relations:
            for g, _ in (*lhs, *rhs):
                if not 0 <= g < n:
                    raise ValueError(f"generator id {g} out of range")

    @property
    def gen_ids(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.generators)}

    def pretty(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(
            format_relation(lhs, rhs, self.generators) for lhs, rhs in self.relations
        )
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"


@dataclass(frozen=True)
class TriangularPresentation:
    """A presentation whose relations all have the product shape b c = d.

    ``triples`` holds (b, c, d) as 0-based generator ids.  ``source_map``
    records, for presentations obtained by rewriting, where each original
    generator ended up.
    """

    names: tuple[str, ...]
    triples: tuple[tuple[int, int, int], ...]
    source_map: tuple[int, ...] = ()

    def __post_init__(self):
        p = len(self.names)
        for b, c, d in self.triples:
            for g in (b, c, d):
                if not 0 <= g < p:
                    raise ValueError(f"generator id {g} out of range 0..{p - 1}")

    @property
    def p(self) -> int:
        return len(self.names)

    @property
    def q(self) -> int:
        return len(self.triples)

    def to_group_presentation(self) -> GroupPresentation:
        rels = tuple(
            (((b, 1), (c, 1)), ((d, 1),)) for b, c, d in self.triples
        )
        return GroupPresentation(self.names, rels)


def _fresh(base: str, used: set[str]) -> str:
    if base not in used:
        used.add(base)
        return base
    k = 2
    while f"{base}{k}" in used:
        k += 1
    used.add(f"{base}{k}")
    return f"{base}{k}"


def _as_triangular(pres: GroupPresentation) -> TriangularPresentation | None:
    """Return the direct encoding when every relation already is b c = d."""
    triples = []
    for lhs, rhs in pres.relations:
        lhs, rhs = reduce_word(lhs), reduce_word(rhs)
        if len(lhs) == 1 and len(rhs) == 2:
            lhs, rhs = rhs, lhs
        if len(lhs) == 2 and len(rhs) == 1:
            (b, eb), (c, ec) = lhs
            ((d, ed),) = rhs
            if eb == ec == ed == 1:
                triples.append((b, c, d))
                continue
        return None
    return TriangularPresentation(
        names=pres.generators,
        triples=tuple(triples),
        source_map=tuple(range(len(pres.generators))),
    )


def triangularize(pres: GroupPresentation) -> TriangularPresentation:
    """Rewrite a finite presentation into product-form relations b c = d.

    When the input is not already in that shape, an explicit identity
    generator is adjoined (with its absorption laws), a formal inverse is
    adjoined for every generator that occurs inverted, and long sides are
    split with prefix generators.  The resulting presentation defines the
    same group.
    """
    direct = _as_triangular(pres)
    if direct is not None:
        return direct

    used = set(pres.generators)
    names = list(pres.generators)
    unit = len(names)
    names.append(_fresh("e", used))

    inverse_of: dict[int, int] = {}

    def inv_gen(g: int) -> int:
        if g not in inverse_of:
            names.append(_fresh(f"{pres.generators[g]}_inv", used))
            inverse_of[g] = len(names) - 1
        return inverse_of[g]

    def positive(w: Word) -> list[int]:
        return [g if e == 1 else inv_gen(g) for g, e in reduce_word(w)]

    sides = [(positive(lhs), positive(rhs)) for lhs, rhs in pres.relations]

    pair_defs: dict[tuple[int, int], int] = {}
    prefix_triples: list[tuple[int, int, int]] = []

    def fold(letters: list[int], down_to: int) -> list[int]:
        letters = list(letters)
        while len(letters) > down_to:
            key = (letters[0], letters[1])
            if key not in pair_defs:
                names.append(_fresh("y", used))
                pair_defs[key] = len(names) - 1
                prefix_triples.append((key[0], key[1], pair_defs[key]))
            letters[:2] = [pair_defs[key]]
        return letters

    relation_triples: list[tuple[int, int, int]] = []
    for lhs, rhs in sides:
        lhs = fold(lhs, 2)
        rhs = fold(rhs, 2)
        if len(lhs) < len(rhs):
            lhs, rhs = rhs, lhs
        if len(rhs) == 2:
            rhs = fold(rhs, 1)
        if not rhs:
            rhs = [unit]
        if not lhs:
            lhs = [unit]
        if len(lhs) == 2:
            relation_triples.append((lhs[0], lhs[1], rhs[0]))
        elif lhs[0] != rhs[0]:
            relation_triples.append((lhs[0], unit, rhs[0]))

    triples: list[tuple[int, int, int]] = [(unit, unit, unit)]
    for g in range(len(names)):
        if g != unit:
            triples.append((unit, g, g))
            triples.append((g, unit, g))
    for g in sorted(inverse_of):
        triples.append((g, inverse_of[g], unit))
        triples.append((inverse_of[g], g, unit))
    triples.extend(prefix_triples)
    triples.extend(relation_triples)

    return TriangularPresentation(
        names=tuple(names),
        triples=tuple(triples),
        source_map=tuple(range(len(pres.generators))),
    )


@dataclass
class SimplificationResult:
    presentation: GroupPresentation
    exhausted: bool = False
    passes: int = 0


def _relator(lhs: Word, rhs: Word) -> Word:
    return reduce_word(lhs + invert_word(rhs))


def _total_length(relations) -> int:
    return sum(len(lhs) + len(rhs) for lhs, rhs in relations)


def _substitute(w: Word, g: int, definition: Word) -> Word:
    out: list[tuple[int, int]] = []
    for h, e in w:
        if h == g:
            out.extend(definition if e == 1 else invert_word(definition))
        else:
            out.append((h, e))
    return reduce_word(tuple(out))


def tietze_simplify(
    pres: GroupPresentation,
    max_passes: int = 200,
    growth_factor: float = 4.0,
) -> SimplificationResult:
    """Simplify a presentation without changing the group it defines.

    Each pass free-reduces everything, drops trivially true relations, and
    eliminates one generator that occurs exactly once in some relator
    (shortest relator first, lowest generator id breaking ties).  Total
    relator length is not allowed to grow past ``growth_factor`` times its
    initial value; if that or the pass budget blocks further progress the
    best-so-far presentation is returned with ``exhausted`` set.
    """
    names = list(pres.generators)
    relations = [
        (reduce_word(lhs), reduce_word(rhs)) for lhs, rhs in pres.relations
    ]
    budget = max(16, int(growth_factor * max(1, _total_length(relations))))
    exhausted = False
    passes = 0

    while passes < max_passes:
        passes += 1
        seen: set[tuple[Word, Word]] = set()
        cleaned = []
        for lhs, rhs in relations:
            lhs, rhs = reduce_word(lhs), reduce_word(rhs)
            if lhs == rhs:
                continue
            key = (lhs, rhs) if (lhs, rhs) <= (rhs, lhs) else (rhs, lhs)
            if key in seen:
                continue
            seen.add(key)
            cleaned.append((lhs, rhs))
        relations = cleaned

        candidates = []
        for ri, (lhs, rhs) in enumerate(relations):
            rel = _relator(lhs, rhs)
            counts: dict[int, int] = {}
            for g, _ in rel:
                counts[g] = counts.get(g, 0) + 1
            for g, cnt in counts.items():
                if cnt == 1:
                    candidates.append((len(rel), g, ri, rel))
        if not candidates:
            break
        candidates.sort(key=lambda c: c[:3])

        applied = False
        blocked = False
        for _, g, ri, rel in candidates:
            pos = next(i for i, (h, _) in enumerate(rel) if h == g)
            # rel = u g^e v = 1  =>  g^e = u^-1 v^-1  =>  g = (u^-1 v^-1)^e
            u, v = rel[:pos], rel[pos + 1 :]
            exp = rel[pos][1]
            definition = reduce_word(invert_word(u) + invert_word(v))
            if exp == -1:
                definition = invert_word(definition)
            new_relations = [
                (_substitute(lhs, g, definition), _substitute(rhs, g, definition))
                for i, (lhs, rhs) in enumerate(relations)
                if i != ri
            ]
            if _total_length(new_relations) > budget:
                blocked = True
                continue
            # Drop g and renumber everything above it.
            remap = {h: (h if h < g else h - 1) for h in range(len(names)) if h != g}
            relations = [
                (
                    tuple((remap[h], e) for h, e in lhs),
                    tuple((remap[h], e) for h, e in rhs),
                )
                for lhs, rhs in new_relations
            ]
            del names[g]
            applied = True
            break
        if not applied:
            exhausted = blocked
            break
    else:
        exhausted = True

    return SimplificationResult(
        presentation=GroupPresentation(tuple(names), tuple(relations)),
        exhausted=exhausted,
        passes=passes,
    )


def smith_normal_form(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix.

    Naive pivoting over Python integers (no overflow concerns); returns the
    diagonal entries d_1 | d_2 | ... as nonnegative integers, zeros omitted.
    """
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return []
    nrows, ncols = len(m), len(m[0])
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0 and (
                    pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, ncols):
                        m[i][j] -= q * m[t][j]
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(t, nrows):
                        m[i][j] -= q * m[i][t]
            if any(m[i][t] for i in range(t + 1, nrows)) or any(
                m[t][j] for j in range(t + 1, ncols)
            ):
                continue
            # Enforce the divisibility chain before moving on.
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if m[i][j] % m[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for j in range(t, ncols):
                m[t][j] += m[bad][j]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def abelian_invariants(pres: GroupPresentation) -> list[int]:
    """Invariant factors of the abelianization; 0 denotes a free factor."""
    ngens = len(pres.generators)
    rows = []
    for lhs, rhs in pres.relations:
        row = [0] * ngens
        for g, e in _relator(lhs, rhs):
            row[g] += e
        rows.append(row)
    diag = smith_normal_form(rows) if rows else []
    nonzero = [d for d in diag if d != 0]
    invariants = [d for d in nonzero if d != 1]
    free_rank = ngens - len(nonzero)
    return invariants + [0] * free_rank
