"""Edit scripts: positioned insertions and deletions applied right to left.

A script is a sequence of ``(position, type)`` pairs in application order.
Positions are nonincreasing, so every position also names the original
location in the base word; ``ins0``/``ins1`` at ``i`` insert after u_i
(``i = 0`` inserts at the front) and ``del`` at ``i`` removes u_i.
"""

from __future__ import annotations

import dataclasses
import time
from typing import Iterable

import numpy as np

from . import _parallel
from .errors import InputError, ResourceGuardError
from .lcsscs import deletion_distance, _suffix_table
from .limits import LIMITS
from .report import CensusReport
from .word import Word, is_lambda_nonrepeating

DEL, INS0, INS1 = "del", "ins0", "ins1"
OP_TYPES = (DEL, INS0, INS1)
_TOKENS = {DEL: "D", INS0: "I0", INS1: "I1"}


@dataclasses.dataclass(frozen=True)
class EditScript:
    ops: tuple[tuple[int, str], ...]
    base_length: int

    def __init__(self, ops: Iterable[tuple[int, str]], base_length: int) -> None:
        object.__setattr__(self, "ops", tuple((int(p), t) for p, t in ops))
        object.__setattr__(self, "base_length", int(base_length))

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def positions(self) -> list[int]:
        return [p for p, _ in self.ops]

    @property
    def deletions(self) -> int:
        return sum(t == DEL for _, t in self.ops)

    @property
    def insertions(self) -> int:
        return len(self.ops) - self.deletions

    def result_length(self) -> int:
        return self.base_length - self.deletions + self.insertions

    def __str__(self) -> str:
        return format_script(self)

    @classmethod
    def parse(cls, text: str, base_length: int) -> EditScript:
        ops = []
        for token in filter(None, (s.strip() for s in text.split(","))):
            kind, sep, pos = token.partition("@")
            lookup = {v: k for k, v in _TOKENS.items()}
            if not sep or kind not in lookup or not pos.isdigit():
                raise InputError(f"bad script token {token!r}")
            ops.append((int(pos), lookup[kind]))
        return cls(ops, base_length)


def format_script(s: EditScript) -> str:
    return ",".join(f"{_TOKENS[t]}@{p}" for p, t in s.ops)


def validate(s: EditScript) -> bool:
    prev_pos, prev_type = None, None
    for pos, kind in s.ops:
        if kind not in OP_TYPES or not 0 <= pos <= s.base_length:
            return False
        if kind == DEL and pos == 0:
            return False
        if prev_pos is not None:
            if pos > prev_pos:
                return False
            if prev_type == DEL and pos >= prev_pos:
                return False
        prev_pos, prev_type = pos, kind
    return True


def apply(u: Word, s: EditScript) -> Word:
    if s.base_length != len(u):
        raise InputError(f"script is for length {s.base_length}, word has length {len(u)}")
    if not validate(s):
        raise InputError(f"invalid edit script {format_script(s)!r}")
    symbols = list(u.text)
    for pos, kind in s.ops:
        if kind == DEL:
            del symbols[pos - 1]
        else:
            symbols.insert(pos, "0" if kind == INS0 else "1")
    return Word("".join(symbols))


def _canonical_lcs(a: str, b: str) -> str:
    """The lexicographically smallest LCS of ``a`` and ``b``."""
    L = _suffix_table(a, b)
    out = []
    i = j = 0
    while L[i][j]:
        for c in "01":
            p, q = a.find(c, i), b.find(c, j)
            if p >= 0 and q >= 0 and L[p + 1][q + 1] + 1 == L[i][j]:
                out.append(c)
                i, j = p + 1, q + 1
                break
    return "".join(out)


def script_from_pair(u: Word, v: Word) -> EditScript:
    """A minimal script turning ``u`` into ``v``.

    The lexicographically smallest LCS is embedded leftmost into both words;
    unmatched symbols of ``u`` are deleted and unmatched symbols of ``v`` are
    inserted right after the matched ``u`` symbol that precedes them.
    """
    a, b = u.text, v.text
    w = _canonical_lcs(a, b)
    su, sv = [], []
    i = j = 0
    for ch in w:
        i = a.index(ch, i) + 1
        j = b.index(ch, j) + 1
        su.append(i)
        sv.append(j)
    matched_u = set(su)
    # (position, tiebreak, type): deletions sort after insertions at one position
    keyed = [(p, -1, DEL) for p in range(1, len(a) + 1) if p not in matched_u]
    r = 0
    for q in range(1, len(b) + 1):
        if r < len(sv) and sv[r] == q:
            r += 1
            continue
        anchor = su[r - 1] if r else 0
        keyed.append((anchor, q, INS0 if b[q - 1] == "0" else INS1))
    # application order: positions descending; at a shared anchor insert the
    # rightmost v-symbol first, since later insertions land in front of it
    keyed.sort(key=lambda t: (-t[0], -t[1]))
    return EditScript([(p, t) for p, _, t in keyed], len(a))


def compose(u: Word, s1: EditScript, s2: EditScript) -> EditScript:
    """A script on ``u`` equivalent to applying ``s1`` and then ``s2``."""
    w = apply(u, s1)
    v = apply(w, s2)
    s3 = script_from_pair(u, v)
    if len(s3) > len(s1) + len(s2):
        raise AssertionError("composed script longer than its parts")
    return s3


def isolated_positions(s: EditScript, lam: int) -> set[int]:
    """Positions i with lam < i < n - lam and no other op within distance 2*lam."""
    if not validate(s):
        raise InputError(f"invalid edit script {format_script(s)!r}")
    if lam < 1:
        raise InputError("lambda must be positive")
    n = s.base_length
    ps = sorted(s.positions)
    out = set()
    for idx, i in enumerate(ps):
        if not lam < i < n - lam:
            continue
        if idx > 0 and i - ps[idx - 1] <= 2 * lam:
            continue
        if idx + 1 < len(ps) and ps[idx + 1] - i <= 2 * lam:
            continue
        out.add(i)
    return out


# -- Lemma: enough isolated edits force distance > k -----------------------

def _max_isolated(n: int, lam: int) -> int:
    span = n - 2 * lam - 1  # interior positions lam+1 .. n-lam-1
    if span < 1:
        return 0
    return (span - 1) // (2 * lam + 1) + 1


def _check_feasible(n: int, k: int, lam: int) -> None:
    if n - lam + 1 > 1 << lam:
        raise ResourceGuardError(
            f"no {lam}-nonrepeating word of length {n} exists: {n - lam + 1} windows "
            f"of length {lam} but only {1 << lam} distinct values")
    # a length-preserving script has an even number of edits; with fewer than
    # 2k+2 slots every padding edit lands within 2*lam of an isolated one
    if _max_isolated(n, lam) < 2 * k + 2:
        raise ResourceGuardError(
            f"a script on length {n} has at most {_max_isolated(n, lam)} "
            f"{lam}-isolated positions; a length-preserving script with {2 * k + 1} "
            f"isolated edits needs room for {2 * k + 2}")


def _sample_nonrepeating(rng: np.random.Generator, n: int, lam: int) -> Word:
    """A random lam-nonrepeating word: a randomized walk in the de Bruijn graph.

    Each step appends a random symbol whose new window is unused, backtracking
    on dead ends.  Not uniform over nonrepeating words, which the lemma does
    not need.
    """
    if n <= lam:
        return Word.from_int(int(rng.integers(0, 1 << n)), n)
    if 4 * (n - lam + 1) > 3 << lam:
        return _de_bruijn_slice(rng, n, lam)
    mask = (1 << lam) - 1
    budget = LIMITS.sample_retries
    for _ in range(budget):
        start = int(rng.integers(0, 1 << lam))
        bits, used, stack = [start], {start}, []
        while len(bits) < n - lam + 1 and budget > 0:
            budget -= 1
            choices = [c for c in rng.permutation(2).tolist()
                       if ((bits[-1] << 1) & mask | c) not in used]
            while not choices and stack:
                used.discard(bits.pop())
                choices = stack.pop()
            if not choices:
                break
            stack.append(choices[1:])
            nxt = (bits[-1] << 1) & mask | choices[0]
            bits.append(nxt)
            used.add(nxt)
        if len(bits) == n - lam + 1:
            code = start
            for w in bits[1:]:
                code = (code << 1) | (w & 1)
            return Word.from_int(code, n)
    raise ResourceGuardError(f"no {lam}-nonrepeating word of length {n} found")


def _de_bruijn_slice(rng: np.random.Generator, n: int, lam: int) -> Word:
    """A window of a randomly rotated, reflected or complemented de Bruijn cycle.

    Used near saturation (n close to 2^lam + lam - 1), where a random walk
    rarely finds a path through almost every window.
    """
    # prefer-one construction of a binary de Bruijn cycle of order lam
    seq, seen, window = [0] * lam, {0}, 0
    mask = (1 << lam) - 1
    while len(seen) < 1 << lam:
        for c in (1, 0):
            nxt = ((window << 1) & mask) | c
            if nxt not in seen:
                break
        seen.add(nxt)
        window = nxt
        seq.append(c)
    cycle = seq[: 1 << lam]
    if rng.integers(2):
        cycle.reverse()
    if rng.integers(2):
        cycle = [1 - c for c in cycle]
    shift = int(rng.integers(1 << lam))
    cycle = cycle[shift:] + cycle[:shift]
    return Word.from_symbols((cycle + cycle)[:n])


def _sample_script(rng: np.random.Generator, n: int, k: int, lam: int) -> EditScript:
    """A length-preserving valid script on length n with at least 2k+1 isolated positions."""
    top = _max_isolated(n, lam)
    for _ in range(LIMITS.sample_retries):
        r = int(rng.integers(2 * k + 1, min(top, 2 * k + 3) + 1))
        room = n - 2 * lam - 1 - (r - 1) * 2 * lam
        picks = np.sort(rng.choice(room, size=r, replace=False))
        spots = [lam + 1 + int(y) + t * 2 * lam for t, y in enumerate(picks)]
        ops = [(p, OP_TYPES[int(rng.integers(3))]) for p in spots]
        spot_arr = np.array(spots)
        free = [p for p in range(n + 1) if np.abs(spot_arr - p).min() > 2 * lam]
        # extra ops anywhere, then pad with the minority type to keep length n,
        # preferring positions that leave the spots isolated
        for _ in range(int(rng.integers(0, 3))):
            ops.append(_random_op(rng, n))
        dels = sum(t == DEL for _, t in ops)
        ins = len(ops) - dels
        for _ in range(abs(dels - ins)):
            kind = (INS0, INS1)[int(rng.integers(2))] if dels > ins else DEL
            pool = [p for p in free if p > 0 or kind != DEL]
            pos = (int(rng.choice(pool)) if pool
                   else int(rng.integers(0 if kind != DEL else 1, n + 1)))
            ops.append((pos, kind))
        script = _arrange(ops, n)
        if script is not None and len(isolated_positions(script, lam)) >= 2 * k + 1:
            return script
    raise ResourceGuardError("could not sample a script with enough isolated positions")


def _random_op(rng: np.random.Generator, n: int) -> tuple[int, str]:
    kind = OP_TYPES[int(rng.integers(3))]
    low = 1 if kind == DEL else 0
    return int(rng.integers(low, n + 1)), kind


def _arrange(ops: list[tuple[int, str]], n: int) -> EditScript | None:
    """Order ops validly (insertions before the deletion at a shared position)."""
    ops = sorted(ops, key=lambda op: (-op[0], op[1] == DEL))
    script = EditScript(ops, n)
    return script if validate(script) else None


def _isolation_trials(args: tuple[int, int, int, int, int, int]) -> tuple[int, int, list]:
    """Run trials start..stop-1; each redraws until v is also lam-nonrepeating."""
    n, k, lam, seed, start, stop = args
    draws, bad = 0, []
    for t in range(start, stop):
        rng = np.random.default_rng([seed, t])
        for _ in range(LIMITS.sample_retries):
            draws += 1
            u = _sample_nonrepeating(rng, n, lam)
            s = _sample_script(rng, n, k, lam)
            v = apply(u, s)
            if is_lambda_nonrepeating(v, lam):
                break
        else:
            raise ResourceGuardError(
                f"trial {t}: no edited word stayed {lam}-nonrepeating "
                f"in {LIMITS.sample_retries} draws")
        if deletion_distance(u, v) <= k:
            bad.append({"trial": t, "u": u.text, "script": format_script(s), "v": v.text})
    return draws, stop - start, bad


def verify_isolation_lemma(n: int, k: int, lam: int, trials: int, rng_seed: int = 0,
                           workers: int = 1) -> CensusReport:
    """Sample (u, script) pairs meeting the lemma's hypotheses and check d(u, v) > k.

    Trial ``t`` draws from its own generator seeded with ``(rng_seed, t)``,
    so the outcome does not depend on ``workers``.
    """
    if min(n, k, lam) < 1 or trials < 0:
        raise InputError("need n, k, lambda >= 1 and trials >= 0")
    params = {"n": n, "k": k, "lambda": lam, "trials": trials, "seed": rng_seed}
    started = time.perf_counter()
    if trials == 0:
        return CensusReport(params, 0, None, 0, {"sampled": 0, "tested": 0, "counterexamples": []})
    _check_feasible(n, k, lam)
    chunks = [(n, k, lam, rng_seed, lo, min(lo + 50, trials)) for lo in range(0, trials, 50)]
    draws = tested = 0
    bad: list = []
    for d, t, b in _parallel.map_chunks(_isolation_trials, chunks, workers):
        draws += d
        tested += t
        bad.extend(b)
    return CensusReport(params, len(bad), None, _parallel.elapsed_ms(started),
                        {"sampled": draws, "tested": tested, "counterexamples": bad})

