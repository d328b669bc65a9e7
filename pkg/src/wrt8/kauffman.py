"""Kauffman-bracket cabling oracle for small colors of the figure-eight knot.

Independent ground truth for the cyclotomic evaluator in :mod:`wrt8.jones`:
the figure eight is presented as the trace closure of the zero-writhe braid
(sigma_1 sigma_2^{-1})^2 in B_3, each strand is replaced by an n-cable, a
Jones-Wenzl idempotent is inserted once on the closed cable, and the whole
word is expanded in the Temperley-Lieb algebra with exact integer Laurent
coefficients in the bracket variable A.  With the normalization <empty> = 1,
<unknot> = -A^2 - A^{-2} and J_l = (-1)^{l-1} <(l-1)-cable with f_{l-1}>,
the unknot value is the quantum integer [l](A), matching the package-wide
normalization at A = t.

Colors above 3 are refused: the state count is exponential in the cable
width and the oracle is only meant to pin conventions.
"""
from __future__ import annotations

from .laurent import IntLaurentPoly

#: loop value delta = -A^2 - A^{-2}
DELTA = IntLaurentPoly.from_terms([(-1, 2), (-1, -2)])

#: figure-eight as a trace-closed braid word in B_3, writhe 0
FIG8_BRAID = ((1, +1), (2, -1), (1, +1), (2, -1))


def identity_matching(n: int):
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def cupcap_matching(n: int, i: int):
    """e_i: a cap joining bottom i, i+1 and a cup joining top i, i+1."""
    m = list(identity_matching(n))
    m[i], m[i + 1] = i + 1, i
    m[n + i], m[n + i + 1] = n + i + 1, n + i
    return tuple(m)


def compose(d1, d2, n: int):
    """Stack d2 on top of d1 (d1 tops glued to d2 bottoms).

    Returns (matching, closed_loops).
    """
    out = [None] * (2 * n)

    def walk(start):
        # start is a result-boundary point: bottom i (i < n) or top i (>= n)
        if start < n:
            side, cur = 1, d1[start]
        else:
            side, cur = 2, d2[start]
        while True:
            if side == 1:
                if cur < n:
                    return cur              # exits at result bottom
                j = cur - n                 # glue node j
                side, cur = 2, d2[j]
            else:
                if cur >= n:
                    return cur              # exits at result top
                side, cur = 1, d1[n + cur]  # glue node cur

    for s in range(2 * n):
        if out[s] is None:
            e = walk(s)
            out[s], out[e] = e, s

    # middle loops: cycles of glue nodes never reached from the boundary
    reached = set()
    for s in range(2 * n):
        if s < n:
            side, cur = 1, d1[s]
        else:
            side, cur = 2, d2[s]
        while True:
            if side == 1:
                if cur < n:
                    break
                reached.add(cur - n)
                side, cur = 2, d2[cur - n]
            else:
                if cur >= n:
                    break
                reached.add(cur)
                side, cur = 1, d1[n + cur]
    loops = 0
    seen = set()
    for j in range(n):
        if j in reached or j in seen:
            continue
        loops += 1
        cur = j
        while True:
            seen.add(cur)
            r = d2[cur]
            assert r < n, "open middle strand"
            seen.add(r)
            q = d1[n + r]
            assert q >= n, "open middle strand"
            cur = q - n
            if cur == j:
                break
    return tuple(out), loops


def closure_loops(d, n: int) -> int:
    """Loop count of the trace closure (top i joined to bottom i)."""
    seen = [False] * (2 * n)
    loops = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        loops += 1
        cur = s
        while not seen[cur]:
            seen[cur] = True
            p = d[cur]
            seen[p] = True
            cur = p + n if p < n else p - n
    return loops


class TLElement:
    """Formal Z[A^{+-1}]-combination of Temperley-Lieb diagrams on n strands."""

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = dict(terms or {})

    @classmethod
    def identity(cls, n: int):
        return cls(n, {identity_matching(n): IntLaurentPoly.one()})

    def mul(self, other: "TLElement") -> "TLElement":
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d, nl = compose(d1, d2, self.n)
                c = c1 * c2
                for _ in range(nl):
                    c = c * DELTA
                acc = out.get(d)
                out[d] = c if acc is None else acc + c
        return TLElement(self.n, {d: c for d, c in out.items() if not c.is_zero()})

    def bracket_closure(self) -> IntLaurentPoly:
        total = IntLaurentPoly.zero()
        for d, c in self.terms.items():
            for _ in range(closure_loops(d, self.n)):
                c = c * DELTA
            total = total + c
        return total


def crossing_element(n: int, i: int, sign: int) -> TLElement:
    """sigma_i^{sign} = A^{sign} id + A^{-sign} e_i (0-based position i)."""
    return TLElement(n, {
        identity_matching(n): IntLaurentPoly.monomial(1, sign),
        cupcap_matching(n, i): IntLaurentPoly.monomial(1, -sign),
    })


def block_crossing_letters(s: int, width: int, sign: int):
    """Elementary letters crossing strands [s, s+width) over [s+width, s+2*width).

    Every elementary crossing carries the sign of the base crossing; the
    underlying permutation is the block swap (checked in the tests).
    """
    letters = []
    for r in range(1, width + 1):
        for pos in range(s + width + r - 2, s + r - 2, -1):
            letters.append((pos, sign))
    return letters


def cabled_fig8_word(width: int):
    letters = []
    for base_pos, sign in FIG8_BRAID:
        letters.extend(block_crossing_letters((base_pos - 1) * width, width, sign))
    return letters


def _cabled_bracket(width: int, insert_cupcap: bool) -> IntLaurentPoly:
    n = 3 * width
    elem = TLElement.identity(n)
    if insert_cupcap:
        elem = elem.mul(TLElement(n, {cupcap_matching(n, 0): IntLaurentPoly.one()}))
    for pos, sign in cabled_fig8_word(width):
        elem = elem.mul(crossing_element(n, pos, sign))
    return elem.bracket_closure()


def kauffman_bracket_oracle(color: int) -> IntLaurentPoly:
    """J_color of the figure eight via the cabled bracket, exact in Z[t^{+-1}].

    color = 2 or 3 (cable widths 1, 2).  The Jones-Wenzl insertion for width
    2 is f_2 = id - e/delta; the division by delta is exact on the closure.
    """
    if color < 2 or color > 3:
        raise ValueError("oracle supports colors 2 and 3 only")
    width = color - 1
    sign = (-1) ** (color - 1)
    if width == 1:
        return sign * _cabled_bracket(1, False)
    with_id = _cabled_bracket(2, False)
    with_cup = _cabled_bracket(2, True)
    return sign * (DELTA * with_id - with_cup).divexact(DELTA)
