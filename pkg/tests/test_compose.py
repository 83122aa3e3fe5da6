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
from msca.compose import compose, principals, project
from msca.core import LabelClass, MSCA, parse_state, transition, validate
from msca.handle_error import CompositionError
from msca.synth import compare


class TestCompose(unittest.TestCase):
    def setUp(self):
        self.server = corpus.load("server")
        self.client1 = corpus.load("client1")
        self.client2 = corpus.load("client2")

    def test_clients(self):
        A = compose([self.client1, self.client1])
        self.assertEqual(A.rank, 2)
        self.assertEqual(len(A.states), 4)
        self.assertEqual(len(A.transitions), 8)
        self.assertEqual(A.finals, A.states)
        self.assertEqual(A.initial, ("0", "0"))

    def test_server_and_clients(self):
        A = compose([self.server, self.client2, self.client2])
        self.assertEqual(len(A.states), 8)
        self.assertEqual(len(A.transitions), 16)
        self.assertEqual(A.finals, {("0", "0", "0"), ("3", "1", "1")})
        t1 = transition("[1,0,1]", "[-,?a,-]", "[1,1,1]", "lazy")
        t2 = transition("[1,1,0]", "[-,-,?a]", "[1,1,1]", "lazy")
        t3 = transition("[1,1,1]", "[!tau,-,-]", "[2,1,1]")
        t4 = transition("[2,1,1]", "[!a,-,-]", "[3,1,1]")
        for t in (t1, t2, t3, t4):
            self.assertIn(t, A.transitions)

    def test_forced_match(self):
        A = compose([self.server, self.client2, self.client2])
        out = A.outgoing(parse_state("[0,0,0]"))
        labels = {str(t.label) for t in out}
        self.assertEqual(labels, {"[!a,?a,-]", "[!a,-,?a]", "[-,!b,-]", "[-,-,!b]"})
        self.assertNotIn("[!a,-,-]", labels)
        self.assertNotIn("[-,?a,-]", labels)
        # the match inherits the lazy modality of the request
        self.assertTrue(all(t.is_lazy for t in out if t.label.is_match))

    def test_labels_are_well_formed(self):
        for names in [("alice", "bob", "carl"), ("dealer", "player", "player"),
                      ("adrian", "bruce"), ("server", "client2-urgent", "client2-urgent")]:
            A = compose([corpus.load(n) for n in names])
            self.assertEqual(validate(A), [])
            for t in A.transitions:
                self.assertIsNotNone(t.label.label_class)

    def test_urgent_match(self):
        A = compose([self.server, corpus.load("client2-urgent")])
        t = transition("[0,0]", "[!a,?a]", "[1,1]", "urgent")
        self.assertIn(t, A.transitions)

    def test_nested_principals(self):
        A = compose([compose([self.server, self.client2]), self.client2])
        self.assertEqual(A.rank, 3)
        self.assertEqual(len(principals(A)), 3)
        self.assertIs(principals(A)[0], self.server)

    def test_errors(self):
        with self.assertRaises(CompositionError):
            compose([])
        with self.assertRaises(CompositionError):
            compose([self.client1, MSCA.empty(1)])
        bad = MSCA(1, [("0",)], ("0",), [], [transition("[0]", "[!b]", "[0]", "lazy")])
        with self.assertRaises(CompositionError) as cm:
            compose([bad])
        self.assertEqual(len(cm.exception.violations), 1)


class TestProject(unittest.TestCase):
    def test_round_trip_client1(self):
        client1 = corpus.load("client1")
        self.assertTrue(compare(project(compose([client1, client1]), 0), client1).identical)

    def test_projections_of_alice_bob_carl(self):
        alice, bob, carl = (corpus.load(n) for n in ("alice", "bob", "carl"))
        A = compose([alice, bob, carl])
        for j, p in enumerate([alice, bob, carl]):
            q = project(A, j)
            self.assertEqual(q.rank, 1)
            self.assertLessEqual(q.transitions, p.transitions)
            self.assertEqual(q.initial, p.initial)

    def test_offers_become_optional(self):
        A = compose([corpus.load("server"), corpus.load("client2-urgent")])
        P = project(A, 0)
        self.assertTrue(all(t.modality.value == "optional" for t in P.transitions))
        Q = project(A, 1)
        self.assertIn(transition("[0]", "[?a]", "[1]", "urgent"), Q.transitions)
        self.assertEqual(validate(P), [])

    def test_principals_without_operands(self):
        A = compose([corpus.load("alice"), corpus.load("bob"), corpus.load("carl")])
        B = MSCA(A.rank, A.states, A.initial, A.finals, A.transitions)
        ps = principals(B)
        self.assertEqual([p.rank for p in ps], [1, 1, 1])
        self.assertTrue(all(validate(p) == [] for p in ps))

    def test_out_of_range(self):
        with self.assertRaises(CompositionError):
            project(corpus.load("client1"), 1)
        with self.assertRaises(CompositionError):
            project(corpus.load("client1"), -1)

    def test_label_classes(self):
        A = compose([corpus.load("server"), corpus.load("client2"), corpus.load("client2")])
        classes = {t.label.label_class for t in A.transitions}
        self.assertEqual(classes, {LabelClass.REQUEST, LabelClass.OFFER, LabelClass.MATCH})


if __name__ == '__main__':
    unittest.main()
