"""Finite automaton for the forbidden coefficient patterns of non-geodesic
expansions, over the abstract alphabet {0, +1, -1, +2, -2, OTHER}.

The forbidden languages (scanned over the second coefficient onwards) are:
a zero anywhere; a run of r like-signed ones; and the sign-coherent
interleaved families

    even q = 2r:      1^(r-1) 2 (1^(r-2) 2)* 1^(r-1)
    odd  q = 2r+1:    1^(r-1) 2 1^(r-1) (2 1^(r-2) 2 1^(r-1))* 2 1^(r-1)

together with their negations.  The star makes the languages infinite, so
they are compiled from a nondeterministic description to a total DFA by
subset construction; streaming scans then need finite state only.

For q = INFINITY the graph is a tree and the only obstruction is a zero.
q = 3 is not covered (geodesic testing there goes through the oracle).
"""

from __future__ import annotations

from functools import lru_cache

from .algebraic import INFINITY
from .errors import InvalidParameterError

SYM_ZERO, SYM_P1, SYM_M1, SYM_P2, SYM_M2, SYM_OTHER = range(6)
N_SYMBOLS = 6


def symbol_of(b: int) -> int:
    if b == 0:
        return SYM_ZERO
    if b == 1:
        return SYM_P1
    if b == -1:
        return SYM_M1
    if b == 2:
        return SYM_P2
    if b == -2:
        return SYM_M2
    return SYM_OTHER


class _NfaBuilder:
    def __init__(self):
        self.transitions: list[dict[int, set[int]]] = []
        self.start = self.new_state()
        self.accept = self.new_state()
        for sym in range(N_SYMBOLS):
            self.add(self.start, sym, self.start)  # match may begin anywhere
            self.add(self.accept, sym, self.accept)  # forbidden is absorbing

    def new_state(self) -> int:
        self.transitions.append({})
        return len(self.transitions) - 1

    def add(self, src: int, sym: int, dst: int) -> None:
        self.transitions[src].setdefault(sym, set()).add(dst)

    def chain(self, src: int, sym: int, length: int) -> int:
        cur = src
        for _ in range(length):
            nxt = self.new_state()
            self.add(cur, sym, nxt)
            cur = nxt
        return cur

    def add_zero_family(self):
        self.add(self.start, SYM_ZERO, self.accept)

    def add_sign_families(self, r: int, odd: bool, one: int, two: int):
        # run of r like-signed ones
        pre = self.chain(self.start, one, r - 1)
        self.add(pre, one, self.accept)
        if not odd:
            # 1^(r-1) 2 ( 1^(r-2) 2 )* 1^(r-1)
            hub = self.new_state()
            self.add(pre, two, hub)
            cur = hub
            for j in range(r - 1):
                if j == r - 2:
                    self.add(cur, two, hub)       # r-2 ones then 2: loop
                    self.add(cur, one, self.accept)  # r-1 ones: done
                else:
                    nxt = self.new_state()
                    self.add(cur, one, nxt)
                    cur = nxt
        else:
            # 1^(r-1) 2 1^(r-1) ( 2 1^(r-2) 2 1^(r-1) )* 2 1^(r-1)
            mid = self.new_state()
            self.add(pre, two, mid)
            mid_end = self.chain(mid, one, r - 1)
            hub = self.new_state()
            self.add(mid_end, two, hub)
            cur = hub
            for j in range(r - 1):
                if j == r - 2:
                    z = self.new_state()
                    self.add(cur, two, z)         # r-2 ones then the long way back
                    z_end = self.chain(z, one, r - 1)
                    self.add(z_end, two, hub)
                    self.add(cur, one, self.accept)  # r-1 ones: done
                else:
                    nxt = self.new_state()
                    self.add(cur, one, nxt)
                    cur = nxt


class PatternAutomaton:
    """Deterministic, total scanner: state 0 is the start, `accepting`
    states mean a forbidden pattern has been seen (and absorb)."""

    __slots__ = ("q", "table", "accepting", "n_states")

    def __init__(self, q, table, accepting):
        self.q = q
        self.table = table
        self.accepting = accepting
        self.n_states = len(table)

    @property
    def start(self) -> int:
        return 0

    def step(self, state: int, coefficient: int) -> int:
        return self.table[state][symbol_of(coefficient)]

    def is_accepting(self, state: int) -> bool:
        return state in self.accepting

    def scan(self, coefficients) -> bool:
        """True when the coefficient stream contains a forbidden pattern."""
        state = 0
        for b in coefficients:
            state = self.table[state][symbol_of(b)]
            if state in self.accepting:
                return True
        return False


def _determinize(nfa: _NfaBuilder, q) -> PatternAutomaton:
    start = frozenset({nfa.start})
    index = {start: 0}
    table = []
    queue = [start]
    accepting = set()
    while queue:
        cur = queue.pop(0)
        row = []
        for sym in range(N_SYMBOLS):
            nxt = set()
            for s in cur:
                nxt |= nfa.transitions[s].get(sym, set())
            if nfa.accept in nxt:
                nxt = {nfa.accept}  # absorbing
            nxt = frozenset(nxt) if nxt else frozenset({nfa.start})
            if nxt not in index:
                index[nxt] = len(index)
                queue.append(nxt)
                if nfa.accept in nxt:
                    accepting.add(index[nxt])
            row.append(index[nxt])
        table.append(row)
    for state_set, i in index.items():
        if nfa.accept in state_set:
            accepting.add(i)
    return PatternAutomaton(q, tuple(tuple(r) for r in table), frozenset(accepting))


@lru_cache(maxsize=None)
def _build(q) -> PatternAutomaton:
    if q == INFINITY:
        nfa = _NfaBuilder()
        nfa.add_zero_family()
        return _determinize(nfa, q)
    if q == 3:
        raise InvalidParameterError("no pattern characterization is used for q=3; use the oracle")
    if q < 3:
        raise InvalidParameterError("q must be at least 3")
    r = q // 2
    odd = q % 2 == 1
    nfa = _NfaBuilder()
    nfa.add_zero_family()
    nfa.add_sign_families(r, odd, SYM_P1, SYM_P2)
    nfa.add_sign_families(r, odd, SYM_M1, SYM_M2)
    return _determinize(nfa, q)


def build_pattern_automaton(ctx) -> PatternAutomaton:
    """DFA recognizing the forbidden-subsequence languages for the context."""
    return _build(ctx.q)
