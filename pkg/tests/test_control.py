#!/usr/bin/env python
#*****************************************************************************
#       Copyright (C) 2026 The msca developers
#
#  Distributed under the terms of the GNU General Public License (GPL)
#  as published by the Free Software Foundation; either version 2 of
#  the License, or (at your option) any later version.
#                  http://www.gnu.org/licenses/
#*****************************************************************************

import unittest

from msca import corpus
from msca.compose import compose, principals
from msca.control import ControllabilityChecker, Semantics, is_controllable
from msca.core import transition
from msca.handle_error import ControllabilityError

ALL = list(Semantics)


class TestModalities(unittest.TestCase):
    def setUp(self):
        self.A = compose([corpus.load(n) for n in ("server", "client2-urgent", "client2-urgent")])

    def test_optional_is_always_controllable(self):
        t = transition("[0,0,0]", "[-,!b,-]", "[0,0,0]")
        for sem in ALL:
            v = is_controllable(t, self.A, self.A, sem=sem)
            self.assertTrue(v.controllable)
            self.assertIsNone(v.witness)

    def test_urgent_is_never_controllable(self):
        t = transition("[0,0,0]", "[!a,?a,-]", "[1,1,0]", "urgent")
        for sem in ALL:
            self.assertFalse(is_controllable(t, self.A, self.A, sem=sem))

    def test_semantics_by_name(self):
        t = transition("[0,0,0]", "[-,!b,-]", "[0,0,0]")
        self.assertEqual(is_controllable(t, self.A, self.A, sem="refined").semantics,
                         Semantics.REFINED)
        with self.assertRaises(ValueError):
            is_controllable(t, self.A, self.A, sem="sometimes")


class TestLazy(unittest.TestCase):
    def setUp(self):
        self.abc = compose([corpus.load(n) for n in ("alice", "bob", "carl")])
        self.t = transition("[a1,b0,c0]", "[-,?d,-]", "[a1,b2,c0]", "lazy")

    def test_original(self):
        v = is_controllable(self.t, self.abc, self.abc, sem=Semantics.ORIGINAL)
        self.assertTrue(v)
        self.assertEqual(v.witness.transitions,
                         (transition("[a2,b0,c0]", "[!d,?d,-]", "[a4,b2,c0]", "lazy"),))

    def test_refined(self):
        self.assertFalse(is_controllable(self.t, self.abc, self.abc, sem=Semantics.REFINED))
        t = transition("[a0,b0,c0]", "[-,?c,-]", "[a0,b1,c0]", "lazy")
        v = is_controllable(t, self.abc, self.abc, sem=Semantics.REFINED)
        self.assertTrue(v)
        w, = v.witness.transitions
        self.assertEqual(w, transition("[a1,b0,c0]", "[!c,?c,-]", "[a3,b1,c0]", "lazy"))
        path, = v.witness.paths
        self.assertEqual(path, (transition("[a0,b0,c0]", "[!a,-,-]", "[a1,b0,c0]"), w))

    def test_forall(self):
        v = is_controllable(self.t, self.abc, self.abc, principals(self.abc), Semantics.FORALL)
        self.assertTrue(v)
        self.assertEqual(v.witness.anchor, ("a0", "b0", "c0"))
        self.assertEqual(sorted(str(w.label) for w in v.witness.transitions),
                         ["[!c,?c,-]", "[!d,?d,-]"])
        for path, w in zip(v.witness.paths, v.witness.transitions):
            self.assertEqual(path[0].source, ("a0", "b0", "c0"))
            self.assertEqual(path[-1], w)
            self.assertTrue(all(s.label[1].is_idle for s in path[:-1]))

    def test_mpc(self):
        self.assertFalse(is_controllable(self.t, self.abc, self.abc, sem=Semantics.MPC))

    def test_matches_must_survive_in_the_sub_automaton(self):
        K = self.abc.restrict(t for t in self.abc.transitions if str(t.label) != "[!d,?d,-]")
        self.assertFalse(is_controllable(self.t, self.abc, K, sem=Semantics.ORIGINAL))

    def test_card_game(self):
        A = compose([corpus.load(n) for n in ("dealer", "player", "player")])
        t = transition("[Card2,Pair1,Pair2Card2]", "[-,?3,-]",
                       "[Card2,Pair1Card3,Pair2Card2]", "lazy")
        C = ControllabilityChecker(A, A)
        self.assertFalse(C.verdict(t, Semantics.REFINED))
        self.assertTrue(C.verdict(t, Semantics.ORIGINAL))
        # cached verdicts are equal to fresh ones
        self.assertEqual(C.verdict(t, Semantics.REFINED),
                         is_controllable(t, A, A, sem=Semantics.REFINED))


class TestErrors(unittest.TestCase):
    def setUp(self):
        self.A = compose([corpus.load(n) for n in ("alice", "bob", "carl")])

    def test_not_a_sub_automaton(self):
        B = compose([corpus.load(n) for n in ("server", "client2", "client2")])
        with self.assertRaises(ControllabilityError):
            ControllabilityChecker(self.A, B)

    def test_foreign_transition(self):
        C = ControllabilityChecker(self.A, self.A)
        with self.assertRaises(ControllabilityError):
            C.verdict(transition("[a0,b0,c0]", "[!z,-,-]", "[a0,b0,c0]"), Semantics.ORIGINAL)

    def test_principals(self):
        with self.assertRaises(ControllabilityError):
            ControllabilityChecker(self.A, self.A, principals(self.A)[:2])
        with self.assertRaises(ControllabilityError):
            ControllabilityChecker(self.A, self.A, [self.A, self.A, self.A])


if __name__ == '__main__':
    unittest.main()
