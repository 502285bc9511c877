"""Leximin solver for general ranked valuations, with capacitated variants.

The solver maintains a contiguous block matching and two cursors: `up`, the
best-ranked college whose lower boundary is still open, and `down`, the
currently worst-off college among those whose upper boundary is open.  Each
iteration either chain-demotes one student from up's side into down (kept
only if the full sorted value tuple does not get worse) or fixes a boundary
based on *which agent* would be the first to lose:

  * the giving college loses -> its lower boundary is final;
  * a chained student loses -> its old college's lower boundary is final and
    colleges further right are soft-blocked until that college opens again;
  * some other college loses -> speculate several demotions ahead and commit
    the whole run only if the tuple recovers.

With capacities the same loop runs with full colleges upper-fixed; whenever a
full college still gives a student away, the boundaries right of it may have
been fixed prematurely, so the run restarts with those fixes cleared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ._state import RankedState, initial_boundary
from .errors import InvalidInputError, NotAdmissibleError
from .fast import _compare_values
from .model import (
    GREATER,
    LESS,
    Agent,
    Instance,
    Matching,
    classify,
    leximin_tuple,
)
from .report import SolverReport


@dataclass
class FixSets:
    """Boundary bookkeeping.  upper_fix: colleges whose block may not grow;
    lower_fix: colleges whose block may not shrink; soft_fix: pairs
    (blocked, blocker) suspending `blocked` from being chosen as the
    receiving college until `up` moves past `blocker`."""

    upper_fix: set = field(default_factory=set)
    lower_fix: set = field(default_factory=set)
    soft_fix: set = field(default_factory=set)

    def soft_blocked(self, j: int) -> bool:
        return any(pair[0] == j for pair in self.soft_fix)

    def unfixed(self, m: int) -> list:
        return [
            j for j in range(m) if j not in self.upper_fix and not self.soft_blocked(j)
        ]

    def purge(self, up: int) -> None:
        self.soft_fix = {
            (j, blocker) for (j, blocker) in self.soft_fix if not blocker <= up < j
        }


def _first_loss_agent(new_tuple, old_tuple) -> Agent:
    """Agent blamed for a leximin decrease: the occupant, in the new sorted
    tuple, of the first index where new < old.  When equal values reshuffle,
    that occupant may not have lost anything itself; in that case blame the
    first agent in the tied block whose own value strictly decreased (without
    this, the fixing rules can fail to make progress)."""
    new_values, old_values = new_tuple.values, old_tuple.values
    for t, (x, y) in enumerate(zip(new_values, old_values)):
        if x == y:
            continue
        if x > y:
            raise InvalidInputError("tuple does not lose at first divergence")
        agent = new_tuple.agent_at[t]
        old_of = dict(zip(old_tuple.agent_at, old_values))
        if old_of[agent] > x:
            return agent
        for a, v in zip(new_tuple.agent_at, new_values):
            if v == x and old_of[a] > v:
                return a
        return agent
    raise InvalidInputError("tuples are equal; no losing agent")


def source_dec(instance: Instance, mu_new: Matching, mu_old: Matching) -> Agent:
    """The agent to blame for a leximin decrease between two matchings."""
    new = leximin_tuple(instance, mu_new)
    old = leximin_tuple(instance, mu_old)
    return _first_loss_agent(new, old)


class _Counters:
    __slots__ = ("iterations", "chain_moves", "tuple_comparisons", "reruns")

    def __init__(self):
        self.iterations = self.chain_moves = self.tuple_comparisons = 0
        self.reruns = 0

    def steps(self, n: int, m: int) -> int:
        return self.iterations + self.chain_moves + self.tuple_comparisons * (n + m)

    def as_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "chain_moves": self.chain_moves,
            "tuple_comparisons": self.tuple_comparisons,
            "reruns": self.reruns,
        }


def _look_ahead(
    state: RankedState,
    down: int,
    fixes: FixSets,
    caps,
    counters: _Counters,
):
    """Speculative multi-demote into college `down`.  Returns the committed
    state (or None) and mutates the global fix sets only on the non-commit
    exits that pin something down permanently."""
    m = state.instance.m
    shadow = state.copy()
    lf = set(fixes.lower_fix)
    uf = set(fixes.upper_fix)
    base = state.leximin()
    base_values = base.values
    while len(lf) < m:
        if caps is not None and shadow.k[down] >= caps[down]:
            break
        up = min(j for j in range(m) if j not in lf)
        if up >= down:
            break
        if shadow.k[up] == 1 or shadow.college_value(up) <= shadow.college_value(down):
            lf.add(up)
            continue
        shadow.demote(up, down)
        counters.chain_moves += down - up
        shadow_tuple = shadow.leximin()
        counters.tuple_comparisons += 1
        if _compare_values(shadow_tuple.values, base_values) != LESS:
            fixes.lower_fix = lf
            fixes.upper_fix = uf
            return shadow
        kind, idx = _first_loss_agent(shadow_tuple, base)
        if kind == "c" and idx == up:
            lf.add(up)
            uf.add(up + 1)
            continue
        if kind == "s":
            t = shadow.matching().assignment[idx]
            if t == down:
                fixes.upper_fix.add(down)
            else:
                fixes.soft_fix.add((down, t))
            return None
        # some other college lost; keep speculating
    fixes.upper_fix.add(down)
    return None


def _inner_run(
    instance: Instance,
    state: RankedState,
    fixes: FixSets,
    caps,
    T,
    counters: _Counters,
    on_state,
):
    """One full run of the main loop.  Mutates state/fixes/T in place and
    returns the final state."""
    m = instance.m
    visited = {tuple(state.k)}

    def emit(st):
        if on_state is not None:
            on_state(tuple(st.k))

    emit(state)
    seen_configs = set()
    while len(fixes.lower_fix) < m:
        counters.iterations += 1
        up = min(j for j in range(m) if j not in fixes.lower_fix)
        sig = (
            tuple(state.k),
            frozenset(fixes.lower_fix),
            frozenset(fixes.upper_fix),
            frozenset(fixes.soft_fix),
        )
        if sig in seen_configs:
            # livelock escape: this exact configuration was seen before, so
            # no rule can make further progress from it
            fixes.lower_fix.add(up)
            continue
        seen_configs.add(sig)
        fixes.purge(up)
        unfixed = fixes.unfixed(m)
        if not unfixed:
            break
        down = min(unfixed, key=lambda j: (state.college_value(j), j))
        if down < up:
            fixes.upper_fix.add(down)
            continue
        if state.k[up] == 1 or state.college_value(up) <= state.college_value(down):
            fixes.lower_fix.add(up)
            continue
        if caps is not None and state.k[down] >= caps[down]:
            fixes.upper_fix.add(down)
            continue
        base = state.leximin()
        base_values = base.values
        # A demotion is irreversible (blocks only shrink on the left), so
        # committing the first improving move from the leftmost college into
        # the worst-off college can strand the run at a local optimum: a
        # giver further right, or a receiver other than the minimum-value
        # college, may improve the tuple more.  Try every eligible
        # (giver, receiver) pair and keep the leximin-best trial; the
        # canonical up -> down move still drives the loss attribution when
        # nothing improves.
        receivers = [
            q
            for q in unfixed
            if q > up and (caps is None or state.k[q] < caps[q])
        ]
        trial = trial_tuple = giver = None
        canon_tuple = None
        for q in receivers:
            for p in range(q):
                if p in fixes.lower_fix or state.k[p] <= 1:
                    continue
                cand = state.copy()
                cand.demote(p, q)
                counters.chain_moves += q - p
                cand_tuple = cand.leximin()
                counters.tuple_comparisons += 1
                if (p, q) == (up, down):
                    canon_tuple = cand_tuple
                if (
                    trial is None
                    or _compare_values(cand_tuple.values, trial_tuple.values)
                    == GREATER
                ):
                    trial, trial_tuple, giver = cand, cand_tuple, p
        if trial is None:
            # every receiver is saturated; the giving side cannot move
            fixes.lower_fix.add(up)
            continue
        cmp = _compare_values(trial_tuple.values, base_values)
        loss_agent = None
        if cmp != LESS:
            key = tuple(trial.k)
            if cmp == GREATER or key not in visited:
                if T is not None and caps is not None and state.k[giver] >= caps[giver]:
                    T[giver] = 1
                state = trial
                visited.add(key)
                emit(state)
                continue
            # an EQUAL commit that would revisit a boundary: treat as a
            # loss caused by the giving college
            loss_agent = ("c", giver)
            up = giver
        if loss_agent is None:
            # attribute the loss from the canonical up -> down trial: its
            # blame decides whether to fix a boundary or speculate ahead
            loss_agent = _first_loss_agent(
                canon_tuple if canon_tuple is not None else trial_tuple, base
            )
        kind, idx = loss_agent
        if kind == "c" and idx == up:
            fixes.lower_fix.add(up)
            fixes.upper_fix.add(up + 1)
        elif kind == "s":
            t = state.matching().assignment[idx]
            before = (set(fixes.lower_fix), set(fixes.upper_fix), set(fixes.soft_fix))
            fixes.lower_fix.add(t)
            if t + 1 < m:
                fixes.upper_fix.add(t + 1)
                fixes.soft_fix |= {(j, t + 1) for j in unfixed if j > t + 1}
            if (fixes.lower_fix, fixes.upper_fix, fixes.soft_fix) == before:
                # everything around the blamed student is already pinned,
                # so the only remaining conclusion is that the giving
                # college cannot shrink further
                fixes.lower_fix.add(up)
                fixes.upper_fix.add(up + 1)
        else:
            committed = _look_ahead(state, down, fixes, caps, counters)
            if committed is not None:
                state = committed
                visited.add(tuple(state.k))
                emit(state)
    return state


def _require_ranked(instance: Instance) -> None:
    if not classify(instance).ranked:
        raise NotAdmissibleError("solver requires strict rankings shared by index order")


def fast_gen(instance: Instance, on_state: Optional[Callable] = None) -> SolverReport:
    """Leximin-optimal complete stable matching for general ranked valuations.
    Dispatches to cap_fast_gen when a capacity is below n-1."""
    _require_ranked(instance)
    n, m = instance.n, instance.m
    if any(b < n - 1 for b in instance.capacities):
        return cap_fast_gen(instance, on_state=on_state)
    state = RankedState(instance, initial_boundary(instance, [n] * m))
    fixes = FixSets(upper_fix={0}, lower_fix={m - 1})
    counters = _Counters()
    state = _inner_run(instance, state, fixes, None, None, counters, on_state)
    return SolverReport(
        algorithm="fast_gen",
        matching=state.matching(),
        leximin=state.leximin(),
        steps=counters.steps(n, m),
        counters=counters.as_dict(),
    )


def cap_preprocess(instance: Instance):
    """Capacity-aware starting point: the left-heavy feasible fill, plus fix
    sets.  When some tail student already sits at or below every college's
    value and is alone at its college, that college and everything to its
    right can never profitably shed students, so their lower boundaries are
    fixed up front.  (Only the lower ones: such a college may still *gain*
    members when that raises its value without hurting the minimum.)"""
    _require_ranked(instance)
    n, m = instance.n, instance.m
    state = RankedState(instance, initial_boundary(instance))
    fixes = FixSets(upper_fix={0}, lower_fix={m - 1})
    college_values = [state.college_value(j) for j in range(m)]
    matching = state.matching()
    assignment = matching.assignment
    for i in range(1, n - 1):
        j = assignment[i]
        if (
            all(state.k[p] == 1 for p in range(j, m))
            and all(instance.u(i, j) <= cv for cv in college_values)
        ):
            for p in range(j, m):
                fixes.lower_fix.add(p)
            break
    return matching, fixes


def cap_fast_gen(
    instance: Instance, on_state: Optional[Callable] = None
) -> SolverReport:
    """Capacity-respecting variant of fast_gen with the restart rule for
    prematurely fixed boundaries."""
    _require_ranked(instance)
    n, m = instance.n, instance.m
    matching, fixes = cap_preprocess(instance)
    k0 = [len(ms) for ms in matching.college_view(m)]
    state = RankedState(instance, k0)
    caps = list(instance.capacities)
    counters = _Counters()
    T = [0] * m
    while True:
        state = _inner_run(instance, state, fixes, caps, T, counters, on_state)
        if not any(T):
            break
        counters.reruns += 1
        j_star = min(j for j in range(m) if T[j])
        fixes = FixSets(upper_fix=set(range(j_star)) or {0}, lower_fix={m - 1})
        T = [0] * m
    return SolverReport(
        algorithm="cap_fast_gen",
        matching=state.matching(),
        leximin=state.leximin(),
        steps=counters.steps(n, m),
        counters=counters.as_dict(),
    )
