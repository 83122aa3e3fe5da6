#!/usr/bin/env python
#*****************************************************************************
#       Copyright (C) 2026 The msca developers
#
#  Distributed under the terms of the GNU General Public License (GPL)
#  as published by the Free Software Foundation; either version 2 of
#  the License, or (at your option) any later version.
#                  http://www.gnu.org/licenses/
#*****************************************************************************

"""
Properties of synthesis checked on random compositions.
"""

import random
import unittest
from collections import deque

from msca import io
from msca.compose import compose, principals
from msca.control import ControllabilityChecker
from msca.core import MSCA, sorted_transitions, transition, validate
from msca.reach import dangling, reachable_via_idle
from msca.simulate import walk
from msca.synth import split_lazy, synthesize

INSTANCES = 200


def random_principal(rng, urgent=False):
    n = rng.randint(1, 5)
    states = [(str(i),) for i in range(n)]
    finals = rng.sample(states, rng.randint(1, n))
    modalities = ["optional", "lazy"] + (["urgent"] if urgent else [])
    transitions = []
    for _ in range(rng.randint(0, 8)):
        source, target = rng.randrange(n), rng.randrange(n)
        name = rng.choice("abc")
        if rng.random() < 0.5:
            label, modality = "[!{}]".format(name), "optional"
        else:
            label, modality = "[?{}]".format(name), rng.choice(modalities)
        transitions.append(transition("[{}]".format(source), label, "[{}]".format(target),
                                      modality))
    return MSCA(1, states, states[0], finals, transitions)


def random_operands(rng, urgent=False):
    return [random_principal(rng, urgent) for _ in range(rng.randint(2, 3))]


def random_composition(rng, urgent=False):
    return compose(random_operands(rng, urgent))


def closure(start, step):
    seen = set(start)
    todo = deque(seen)
    while todo:
        for r in step(todo.popleft()):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


class TestSynthesisProperties(unittest.TestCase):
    def assertOrchestration(self, A, O):
        self.assertEqual(validate(O), [])
        if O.is_empty():
            return
        self.assertEqual(O.initial, A.initial)
        self.assertLessEqual(O.states, A.states)
        self.assertLessEqual(O.transitions, A.transitions)
        self.assertLessEqual(O.finals, A.finals)
        self.assertFalse(any(t.label.is_request for t in O.transitions))
        self.assertEqual(dangling(O), frozenset())

    def test_lazy_semantics(self):
        rng = random.Random(20261019)
        for k in range(INSTANCES):
            A = random_composition(rng)
            self.assertEqual(validate(A), [])
            results = {}
            for sem in ("original", "refined", "forall"):
                with self.subTest(instance=k, semantics=sem):
                    O, trace = synthesize(A, sem)
                    self.assertOrchestration(A, O)
                    self.assertEqual(trace.empty, O.is_empty())
                    self.assertFalse(set(trace.forbidden_states()) & O.states)
                    results[sem] = O
            with self.subTest(instance=k):
                self.assertLessEqual(results["refined"].states, results["original"].states)
                self.assertLessEqual(results["refined"].transitions,
                                     results["original"].transitions)

    def test_mpc(self):
        rng = random.Random(4242)
        for k in range(INSTANCES):
            A = random_composition(rng, urgent=True)
            with self.subTest(instance=k):
                O, _ = synthesize(A, "mpc")
                self.assertOrchestration(A, O)
                for t in A.transitions:
                    if t.is_necessary and t.source in O.states:
                        self.assertIn(t, O.transitions)

    def test_walks_on_orchestrations(self):
        rng = random.Random(7)
        for k in range(INSTANCES):
            A = random_composition(rng)
            O, _ = synthesize(A, rng.choice(["original", "refined", "forall"]))
            if O.is_empty():
                continue
            with self.subTest(instance=k):
                w = walk(O, 10, seed=k)
                self.assertEqual(w.verdict.requests_seen, 0)
                self.assertTrue(w.verdict.visited_coreachable)
                # from any orchestration state a final state stays reachable
                self.assertTrue(walk(O, len(O.states), policy=[]).verdict.ended_in_final)

    def test_split(self):
        rng = random.Random(99)
        for k in range(INSTANCES):
            A = random_composition(rng)
            with self.subTest(instance=k):
                lazy = [t for t in A.transitions if t.is_lazy]
                S = split_lazy(A)
                self.assertEqual(validate(S), [])
                self.assertEqual(len(S.states), len(A.states) + len(lazy))
                self.assertEqual(len(S.transitions), len(A.transitions) + len(lazy))
                self.assertEqual(S.finals, A.finals)

    def test_termination_and_determinism(self):
        rng = random.Random(31337)
        for k in range(INSTANCES):
            A = random_composition(rng)
            sem = rng.choice(["original", "refined", "forall"])
            with self.subTest(instance=k, semantics=sem):
                O, trace = synthesize(A, sem)
                self.assertLessEqual(trace.fixpoint_index,
                                     len(A.transitions) + len(A.states) + 1)
                O2, trace2 = synthesize(A, sem)
                self.assertEqual(O, O2)
                self.assertEqual(io.trace_to_json(trace), io.trace_to_json(trace2))
                self.assertEqual(io.trace_from_json(io.trace_to_json(trace)), trace)


class TestCompositionProperties(unittest.TestCase):
    def test_rank_and_forced_matches(self):
        rng = random.Random(1234)
        for k in range(INSTANCES):
            operands = random_operands(rng, urgent=True)
            A = compose(operands)
            with self.subTest(instance=k):
                self.assertEqual(A.rank, sum(p.rank for p in operands))
                self.assertEqual(validate(A), [])
                for t in A.transitions:
                    self.assertIsNotNone(t.label.label_class)
                    if t.label.is_match:
                        continue
                    (i, x), = t.label.non_idle()
                    for j, p in enumerate(operands):
                        if j == i:
                            continue
                        enabled = [s.label[0] for s in p.transitions
                                   if s.source == (t.source[j],)]
                        self.assertFalse(any(y.matches(x) for y in enabled), str(t))

    def test_dangling_against_double_search(self):
        rng = random.Random(2718)
        for k in range(INSTANCES):
            A = random_composition(rng)
            succ, pred = {}, {}
            for t in A.transitions:
                succ.setdefault(t.source, set()).add(t.target)
                pred.setdefault(t.target, set()).add(t.source)
            forward = closure([A.initial], lambda q: succ.get(q, ()))
            backward = closure(A.finals, lambda q: pred.get(q, ()))
            with self.subTest(instance=k):
                self.assertEqual(dangling(A), A.states - (forward & backward))

    def test_documents(self):
        rng = random.Random(161)
        for k in range(INSTANCES):
            A = random_composition(rng)
            with self.subTest(instance=k):
                text = io.save(A)
                B = io.load(text)
                self.assertEqual(B, A)
                self.assertEqual(io.save(B), text)
                self.assertEqual(validate(B), validate(A))


class TestControllabilityProperties(unittest.TestCase):
    def test_hierarchy_and_anti_monotonicity(self):
        rng = random.Random(577)
        for k in range(INSTANCES):
            A = random_composition(rng)
            lazy = [t for t in A.transitions if t.is_lazy]
            if not lazy:
                continue
            kept = [t for t in A.transitions if rng.random() < 0.7]
            K = A.restrict(kept)
            L = A.restrict(t for t in kept if rng.random() < 0.7)
            big, small = ControllabilityChecker(A, K), ControllabilityChecker(A, L)
            with self.subTest(instance=k):
                for t in lazy:
                    if big.verdict(t, "refined"):
                        self.assertTrue(big.verdict(t, "original"))
                    for sem in ("original", "refined"):
                        if not big.verdict(t, sem):
                            self.assertFalse(small.verdict(t, sem))
                    self.assertFalse(big.verdict(t, "mpc"))

    def assertIdlePath(self, path, start, match, j, K, bad):
        self.assertEqual(path[-1], match)
        self.assertEqual(path[0].source, start)
        for s, r in zip(path, path[1:]):
            self.assertEqual(s.target, r.source)
        for s in path[:-1]:
            self.assertIn(s, K.transitions)
            self.assertTrue(s.label[j].is_idle, str(s))
            self.assertNotIn(s.source, bad)
            self.assertNotIn(s.target, bad)

    def test_witnesses(self):
        rng = random.Random(6174)
        checked = 0
        for k in range(INSTANCES):
            A = random_composition(rng)
            K = A.restrict(t for t in A.transitions if rng.random() < 0.8)
            bad = dangling(K)
            checker = ControllabilityChecker(A, K)
            operands = principals(A)
            for t in sorted_transitions(A.transitions):
                if not t.is_lazy:
                    continue
                j = t.label.requester
                for sem in ("original", "refined", "forall"):
                    v = checker.verdict(t, sem)
                    if not v:
                        continue
                    checked += 1
                    w = v.witness
                    with self.subTest(instance=k, transition=str(t), semantics=sem):
                        for c in w.transitions:
                            self.assertIn(c, K.transitions)
                            self.assertTrue(c.label.is_match)
                            self.assertTrue(c.is_necessary)
                            self.assertEqual(c.label.requester, j)
                            self.assertEqual(c.source[j], t.source[j])
                            self.assertNotIn(c.source, bad)
                            self.assertNotIn(c.target, bad)
                            if sem != "original":
                                self.assertTrue(c.is_lazy)
                        if sem == "original":
                            self.assertEqual(len(w.transitions), 1)
                            self.assertEqual((w.anchor, w.paths), (None, ()))
                        elif sem == "refined":
                            self.assertEqual(len(w.transitions), 1)
                            self.assertIsNone(w.anchor)
                            path, = w.paths
                            self.assertIdlePath(path, t.source, w.transitions[0], j, K, bad)
                        else:
                            self.assertNotIn(w.anchor, bad)
                            self.assertEqual(len(w.paths), len(w.transitions))
                            for path, c in zip(w.paths, w.transitions):
                                self.assertIdlePath(path, w.anchor, c, j, K, bad)
                            names = {x.label[0].name for x in operands[j].transitions
                                     if x.source == (t.source[j],) and x.is_lazy and
                                     x.label[0].is_request}
                            self.assertEqual({c.label[j].name for c in w.transitions}, names)
                        if sem != "forall":
                            self.assertEqual(w.transitions[0].label[j].name, t.label[j].name)
        self.assertGreater(checked, 0)


class TestIdleReachabilityProperties(unittest.TestCase):
    def test_forbidding_more_reaches_less(self):
        rng = random.Random(8128)
        for k in range(INSTANCES):
            A = random_composition(rng)
            states = sorted(A.states)
            q = rng.choice(states)
            j = rng.randrange(A.rank)
            small = frozenset(s for s in states if rng.random() < 0.3)
            large = small | frozenset(s for s in states if rng.random() < 0.3)
            with self.subTest(instance=k):
                self.assertLessEqual(reachable_via_idle(A, q, j, large),
                                     reachable_via_idle(A, q, j, small))
                self.assertLessEqual(reachable_via_idle(A, q, j, small),
                                     reachable_via_idle(A, q, j))

    def test_component_that_never_moves(self):
        rng = random.Random(1729)
        still = MSCA(1, [("0",)], ("0",), [("0",)], [])
        for k in range(INSTANCES):
            A = compose(random_operands(rng) + [still])
            j = A.rank - 1
            states = sorted(A.states)
            q = rng.choice(states)
            forbidden = frozenset(s for s in states if rng.random() < 0.2)
            bad = dangling(A) | forbidden
            succ = {}
            for t in A.transitions:
                self.assertTrue(t.label[j].is_idle)
                if t.source not in bad and t.target not in bad:
                    succ.setdefault(t.source, set()).add(t.target)
            seen = closure([q], lambda r: succ.get(r, ())) if q not in bad else set()
            expected = frozenset(t for t in A.transitions
                                 if t.source in seen and t.target not in bad)
            with self.subTest(instance=k):
                self.assertEqual(reachable_via_idle(A, q, j, forbidden), expected)


if __name__ == '__main__':
    unittest.main()
