"""Divided-power word calculus on the extremal vector.

Vectors are Q(q)-linear combinations of words in the divided powers
e_i^(k), f_i^(k) applied to the extremal vector u of weight s.varpi_r with
norm one.  The calculus knows exactly four things about the module:

* u is annihilated by every e_i with i != 0 and every f_i with i != r;
* the defining commutation of e_i and f_i (divided-power form);
* letters of different index commute when of opposite kind, and letters of
  the same kind commute when their nodes are not adjacent;
* the module is integrable, so sl2 string bounds certify vanishing, and a
  weight whose multiplicity vanishes in the classical decomposition carries
  no nonzero vector.

Norms are evaluated by peeling letters through the divided-power adjunction
of the prepolarization; every step is exact Laurent arithmetic.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Optional

from .kleber import closed_form_decompose
from .classrep import classical, weight_multiplicity
from .qlaurent import Laurent, qbinom, qint
from .rootdata import WeightVec, diagram

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

E, F = "e", "f"

#: Letter = (kind, node, power); words list letters in operator order, the
#: rightmost letter acting on u first.
Letter = tuple[str, int, int]
Word = tuple[Letter, ...]

#: Structural rewrite budget per normalization call.
MAX_REWRITE_STEPS = 500_000


class UndecidedVanishingError(RuntimeError):
    """A pairing needed the value of a word the engine cannot decide."""

    def __init__(self, word: Word):
        self.word = word
        super().__init__(f"cannot decide vanishing of the word {word_text(word)}")


class RewriteBudgetError(RuntimeError):
    """The structural rewrite loop exceeded its step budget."""


def letter(kind: str, node: int, power: int) -> Letter:
    if kind not in (E, F) or power < 1:
        raise ValueError(f"bad letter ({kind}, {node}, {power})")
    return (kind, node, power)


def word_text(word: Word) -> str:
    if not word:
        return "u"
    parts = []
    for kind, node, power in word:
        body = f"{kind.upper()}{node}"
        parts.append(body if power == 1 else f"{body}^{power}")
    return " ".join(parts)


def parse_word(text: str) -> Word:
    out = []
    for tok in text.split():
        kind = tok[0].lower()
        rest = tok[1:]
        if "^" in rest:
            node_s, pow_s = rest.split("^", 1)
        else:
            node_s, pow_s = rest, "1"
        out.append(letter(kind, int(node_s), int(pow_s)))
    return tuple(out)


def word_degree(word: Word) -> int:
    return sum(p for _, _, p in word)


class VectorExpr:
    """Formal Q(q)-combination of words applied to u; no zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, Laurent] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @staticmethod
    def from_word(word: Iterable, coeff: Laurent | int = 1) -> VectorExpr:
        c = coeff if isinstance(coeff, Laurent) else Laurent.from_const(coeff)
        return VectorExpr({tuple(word): c})

    @staticmethod
    def unit() -> VectorExpr:
        return VectorExpr.from_word(())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: VectorExpr) -> VectorExpr:
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, Laurent.zero()) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return VectorExpr(out)

    def scale(self, c: Laurent) -> VectorExpr:
        if not c:
            return VectorExpr()
        return VectorExpr({w: cc * c for w, cc in self.terms.items()})

    def text(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms):
            bits.append(f"({self.terms[w].text()}) {word_text(w)}")
        return " + ".join(bits)

    def __repr__(self) -> str:
        return f"VectorExpr({self.text()})"


@dataclass
class Certificate:
    """Replayable reason a word is the zero vector."""

    kind: str  # "rewrite", "serre", or "weight"
    word: Word
    split: int | None = None
    probe: Word | None = None
    weight: tuple[int, ...] | None = None
    subs: tuple["Certificate", ...] = ()

    def describe(self) -> str:
        if self.kind == "weight":
            return f"weight:{word_text(self.word)}"
        if self.kind == "serre":
            return f"serre:{word_text(self.word)}@{self.split}"
        return f"rewrite:{word_text(self.word)}"


class CaseContext:
    """Immutable data for one (family, node, s) verification run."""

    def __init__(self, family: str, r: int, s: int, serre_slack: int = 4):
        self.family = family
        self.r = r
        self.s = s
        self.diagram = diagram(family)
        self.system = classical(family)
        if r not in self.diagram.classical_nodes:
            raise ValueError(f"node {r} is not a classical node of {family}")
        self.decomposition = closed_form_decompose(family, r, s)
        self.serre_slack = serre_slack
        self.cartan = self.diagram.cartan
        self.sym = self.diagram.symmetrizers
        self.nodes = self.diagram.nodes
        self.varpi_lam = self.diagram.varpi(r).lam
        self.cert_log: list[Certificate] = []
        self._norm_memo: dict[tuple[Word, Word], Laurent] = {}
        self._zero_memo: dict[Word, Optional[Certificate]] = {}
        self._zero_fail_cap: dict[Word, int] = {}
        self._structural_memo: dict[Word, Optional[list]] = {}

    # -- weights -------------------------------------------------------------

    def weight_of(self, word: Word) -> WeightVec:
        """Weight of word.u: s.varpi_r plus the signed letter contributions."""
        out = self.diagram.varpi(self.r).scale(self.s)
        for kind, node, power in word:
            step = self.diagram.simple_root(node).scale(power)
            out = out + step if kind == E else out - step
        return out

    def h_pair(self, i: int, word: Word) -> int:
        """<h_i, wt(word.u)> without building the WeightVec."""
        total = self.s * self.varpi_lam[i]
        for kind, node, power in word:
            a = self.cartan[i][node]
            if a:
                total += power * a if kind == E else -power * a
        return total

    def qi(self, i: int, exp: int) -> Laurent:
        return Laurent.monomial(self.sym[i] * exp)


# -- structural rewriting ------------------------------------------------------


def _slides_past(ctx: CaseContext, x: Letter, y: Letter) -> bool:
    if x[1] == y[1]:
        return False
    if x[0] != y[0]:
        return True
    return ctx.cartan[x[1]][y[1]] == 0


def _letter_key(x: Letter) -> tuple:
    return (0 if x[0] == E else 1, x[1], x[2])


def _canonical(ctx: CaseContext, word: Word) -> Word:
    """Lex-least representative of the commutation class of a word.

    Letters that commute (different index, and different kind or
    non-adjacent nodes) may be reordered freely; the canonical form greedily
    extracts the smallest letter whose predecessors all commute with it.
    Equal vectors with scrambled commuting letters then share one key, and
    interactions hidden behind interleaved spectators become adjacent.
    """
    letters = list(word)
    out = []
    while letters:
        best = None
        for p, x in enumerate(letters):
            if all(_slides_past(ctx, letters[q], x) for q in range(p)):
                if best is None or _letter_key(x) < _letter_key(letters[best]):
                    best = p
        out.append(letters.pop(best))
    return tuple(out)


def _slide_outcome(ctx: CaseContext, x: Letter, word: Word, start: int):
    """('meet', pos) | ('blocked', pos) | ('bottom', len) for x sliding right."""
    for p in range(start, len(word)):
        y = word[p]
        if y[1] == x[1]:
            return ("meet", p)
        if not _slides_past(ctx, x, y):
            return ("blocked", p)
    return ("bottom", len(word))


def _dies_at_u(ctx: CaseContext, x: Letter) -> bool:
    if x[0] == E:
        return x[1] != 0
    return x[1] != ctx.r


def _find_rewrite(ctx: CaseContext, word: Word):
    """One rewrite step: None if normal, else a list of (word, factor) terms."""
    n = len(word)
    # annihilation: some letter slides to u and dies there
    for p in range(n):
        x = word[p]
        if _dies_at_u(ctx, x) and _slide_outcome(ctx, x, word, p + 1)[0] == "bottom":
            return []
    # merge of same-kind same-index letters
    for p in range(n):
        x = word[p]
        out, pos = _slide_outcome(ctx, x, word, p + 1)
        if out == "meet" and word[pos][0] == x[0]:
            a, b = x[2], word[pos][2]
            i = x[1]
            merged = (x[0], i, a + b)
            new = word[:p] + word[p + 1 : pos] + (merged,) + word[pos + 1 :]
            return [(new, qbinom(a + b, a, ctx.sym[i]))]
    # e over f, guarded so the displaced e keeps making progress
    for p in range(n):
        x = word[p]
        if x[0] != E:
            continue
        out, pos = _slide_outcome(ctx, x, word, p + 1)
        if out != "meet" or word[pos][0] != F:
            continue
        probe = (E, x[1], 1)
        ahead, _ = _slide_outcome(ctx, probe, word, pos + 1)
        if ahead == "blocked":
            continue
        if ahead == "bottom" and not _dies_at_u(ctx, probe):
            continue
        return _expand_ef(ctx, word, p, pos)
    # f meets e: the workhorse divided-power commutation
    for p in range(n):
        x = word[p]
        if x[0] != F:
            continue
        out, pos = _slide_outcome(ctx, x, word, p + 1)
        if out == "meet" and word[pos][0] == E:
            return _expand_fe(ctx, word, p, pos)
    return None


def _expand_fe(ctx: CaseContext, word: Word, p: int, pos: int):
    """f_i^(a) ... e_i^(b) -> sum_k qbinom(a-b-<h_i,mu>, k) e^(b-k) f^(a-k)."""
    i = word[p][1]
    a, b = word[p][2], word[pos][2]
    mu = ctx.h_pair(i, word[pos + 1 :])
    head = word[:p] + word[p + 1 : pos]
    tail = word[pos + 1 :]
    out = []
    for k in range(min(a, b) + 1):
        coef = qbinom(a - b - mu, k, ctx.sym[i])
        if not coef:
            continue
        mid = []
        if b - k:
            mid.append((E, i, b - k))
        if a - k:
            mid.append((F, i, a - k))
        out.append((head + tuple(mid) + tail, coef))
    return out


def _expand_ef(ctx: CaseContext, word: Word, p: int, pos: int):
    """e_i^(b) ... f_i^(a) -> sum_k qbinom(b-a+<h_i,mu>, k) f^(a-k) e^(b-k)."""
    i = word[p][1]
    b, a = word[p][2], word[pos][2]
    mu = ctx.h_pair(i, word[pos + 1 :])
    head = word[:p] + word[p + 1 : pos]
    tail = word[pos + 1 :]
    out = []
    for k in range(min(a, b) + 1):
        coef = qbinom(b - a + mu, k, ctx.sym[i])
        if not coef:
            continue
        mid = []
        if a - k:
            mid.append((F, i, a - k))
        if b - k:
            mid.append((E, i, b - k))
        out.append((head + tuple(mid) + tail, coef))
    return out


def _structural(ctx: CaseContext, terms: dict[Word, Laurent]) -> dict[Word, Laurent]:
    """Rewrite every word to structural normal form (no certificates)."""
    out: dict[Word, Laurent] = {}
    stack = [(_canonical(ctx, w), c) for w, c in terms.items() if c]
    steps = 0
    while stack:
        word, coeff = stack.pop()
        steps += 1
        if steps > MAX_REWRITE_STEPS:
            raise RewriteBudgetError("structural rewriting exceeded its step budget")
        rewrite = ctx._structural_memo.get(word, False)
        if rewrite is False:
            rewrite = _find_rewrite(ctx, word)
            if rewrite is not None:
                rewrite = [(_canonical(ctx, w2), c2) for w2, c2 in rewrite]
            ctx._structural_memo[word] = rewrite
        if rewrite is None:
            s = out.get(word, Laurent.zero()) + coeff
            if s:
                out[word] = s
            else:
                out.pop(word, None)
        else:
            for w2, c2 in rewrite:
                stack.append((w2, coeff * c2))
    return out


# -- certified vanishing -------------------------------------------------------


def is_zero(ctx: CaseContext, word: Word) -> Optional[Certificate]:
    """Sound zero test.  A Certificate means word.u = 0; None means unknown."""
    word = tuple(word)
    parts = _structural(ctx, {word: Laurent.one()})
    if not parts:
        return Certificate("rewrite", word)
    if set(parts) != {word}:
        subs = []
        for w in sorted(parts):
            c = _zero_cert(ctx, w, word_degree(w) + ctx.serre_slack)
            if c is None:
                return None
            subs.append(c)
        return Certificate("rewrite", word, subs=tuple(subs))
    return _zero_cert(ctx, word, word_degree(word) + ctx.serre_slack)


def _zero_cert(ctx: CaseContext, word: Word, cap: int, _stack: frozenset = frozenset()) -> Optional[Certificate]:
    if not word:
        return None  # u itself is nonzero
    hit = ctx._zero_memo.get(word)
    if hit is not None:
        return hit
    if word in _stack:
        return None
    if ctx._zero_fail_cap.get(word, -1) >= cap:
        return None
    cert = _zero_search(ctx, word, cap, _stack | {word})
    if cert is not None:
        ctx._zero_memo[word] = cert
    else:
        ctx._zero_fail_cap[word] = max(ctx._zero_fail_cap.get(word, -1), cap)
    return cert


def _zero_search(ctx: CaseContext, word: Word, cap: int, stack: frozenset) -> Optional[Certificate]:
    # sl2 string certificates on every suffix, probing with a single letter
    for split in range(len(word)):
        kind, i, power = word[split]
        suffix = word[split + 1 :]
        mh = ctx.h_pair(i, suffix)
        if kind == E:
            if power <= -mh:
                continue
            probe = ((F, i, 1),) + suffix
        else:
            if power <= mh:
                continue
            probe = ((E, i, 1),) + suffix
        if word_degree(probe) > cap:
            continue
        parts = _structural(ctx, {probe: Laurent.one()})
        subs = []
        ok = True
        for w in sorted(parts):
            sub = _zero_cert(ctx, w, cap, stack)
            if sub is None:
                ok = False
                break
            subs.append(sub)
        if ok:
            return Certificate("serre", word, split=split, probe=probe, subs=tuple(subs))
    # weight multiplicity certificate
    mu = ctx.weight_of(word).classical()
    if weight_multiplicity(ctx.system, ctx.decomposition.entries, mu) == 0:
        return Certificate("weight", word, weight=tuple(mu))
    return None


def normalize(ctx: CaseContext, v: VectorExpr) -> VectorExpr:
    """Structural normal form with certified-zero words deleted."""
    parts = _structural(ctx, v.terms)
    kept: dict[Word, Laurent] = {}
    for word in sorted(parts):
        cert = _zero_cert(ctx, word, word_degree(word) + ctx.serre_slack)
        if cert is not None:
            ctx.cert_log.append(cert)
            continue
        kept[word] = parts[word]
    return VectorExpr(kept)


def apply_letter(ctx: CaseContext, lt: Letter, v: VectorExpr) -> VectorExpr:
    """Normalized product (one divided-power letter) . v."""
    out: dict[Word, Laurent] = {}
    for w, c in v.terms.items():
        key = (lt,) + w
        out[key] = out.get(key, Laurent.zero()) + c
    return normalize(ctx, VectorExpr(out))


# -- the prepolarization -------------------------------------------------------


def prepolar(ctx: CaseContext, v: VectorExpr, w: VectorExpr) -> Laurent:
    """Value of the prepolarization (v, w); exact, symmetric in v and w."""
    v = normalize(ctx, v)
    w = normalize(ctx, w)
    total = Laurent.zero()
    for wv, cv in v.terms.items():
        for ww, cw in w.terms.items():
            total = total + cv * cw * _pair_words(ctx, wv, ww, frozenset())
    return total


def norm_sq(ctx: CaseContext, v: VectorExpr) -> Laurent:
    return prepolar(ctx, v, v)


def _pair_words(ctx: CaseContext, left: Word, right: Word, path: frozenset) -> Laurent:
    if ctx.weight_of(left).lam != ctx.weight_of(right).lam:
        return Laurent.zero()
    key = (left, right) if left <= right else (right, left)
    hit = ctx._norm_memo.get(key)
    if hit is not None:
        return hit
    if not left:
        if not right:
            return Laurent.one()
        # (u, W.u): peel from the other side; a revisit means no progress.
        if right in path:
            raise UndecidedVanishingError(right)
        val = _pair_words(ctx, right, left, path | {right})
        ctx._norm_memo[key] = val
        return val
    kind, i, k = left[0]
    rest = _canonical(ctx, left[1:])
    mw = ctx.h_pair(i, right)
    if kind == E:
        factor = ctx.qi(i, k * (k - mw))
        moved = normalize(ctx, VectorExpr({((F, i, k),) + right: Laurent.one()}))
    else:
        factor = ctx.qi(i, k * (k + mw))
        moved = normalize(ctx, VectorExpr({((E, i, k),) + right: Laurent.one()}))
    total = Laurent.zero()
    for w2, c2 in moved.terms.items():
        total = total + c2 * _pair_words(ctx, rest, w2, path)
    val = factor * total
    ctx._norm_memo[key] = val
    return val


def e_norm_via_f(ctx: CaseContext, v: VectorExpr, i: int) -> Laurent:
    """|e_i v|^2 from |f_i v|^2 and |v|^2 by the adjunction identity.

    For v of weight mu with m = <h_i, mu>:

        |e_i v|^2 = q_i^(-2m) |f_i v|^2 + q_i^(-1-m) [-m]_{q_i} |v|^2

    This is the form of the identity forced by the divided-power adjunction
    together with the defining commutation; it agrees with direct pairing.
    """
    v = normalize(ctx, v)
    if v.is_zero():
        return Laurent.zero()
    weights = {ctx.weight_of(w).lam for w in v.terms}
    if len(weights) != 1:
        raise ValueError("e_norm_via_f needs a homogeneous vector")
    m = ctx.h_pair(i, next(iter(v.terms)))
    fv = apply_letter(ctx, (F, i, 1), v)
    fnorm = norm_sq(ctx, fv)
    vnorm = norm_sq(ctx, v)
    d = ctx.sym[i]
    return ctx.qi(i, -2 * m) * fnorm + ctx.qi(i, -1 - m) * qint(-m, d) * vnorm
