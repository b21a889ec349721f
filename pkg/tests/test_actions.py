import itertools
import unittest
import numpy as np
from sympy import isprime
from schreierlab.actions import FamilyName, build_action, family_for_degree, parse_family_spec
from schreierlab.errors import BudgetExceeded, FamilyMismatch, InvalidFamilyParams, PointOutOfRange
from schreierlab.sampling import SeededRng, element_uniformity, image_uniformity

SMALL_SPECS = [
    "sym:n=5", "sym-tuples:n=5,r=2", "cyclic:m=12", "abelian:m=3,d=3",
    "dihedral:m=7", "affine:p=7", "proj:p=5",
]


class TestFamilySpec(unittest.TestCase):
    """Parsing of the `name:key=val` family grammar."""

    def test_parse_round_trips_to_string(self):
        """A parsed spec prints back in canonical parameter order."""
        self.assertEqual(str(parse_family_spec("sym-tuples:r=2,n=6")), "sym-tuples:n=6,r=2")

    def test_rejects_unknown_family(self):
        with self.assertRaises(InvalidFamilyParams):
            parse_family_spec("foo:n=3")

    def test_rejects_missing_and_extra_parameters(self):
        for text in ("sym", "sym:", "sym:m=3", "abelian:m=2", "cyclic:m=3,d=1", "cyclic:m=x"):
            with self.subTest(text=text), self.assertRaises(InvalidFamilyParams):
                parse_family_spec(text)

    def test_rejects_invalid_parameters(self):
        """Composite moduli for prime families and empty domains are refused."""
        for text in ("affine:p=6", "proj:p=1", "sym:n=0", "sym-tuples:n=3,r=4", "dihedral:m=0"):
            with self.subTest(text=text), self.assertRaises(InvalidFamilyParams):
                build_action(text)


class TestActionLaws(unittest.TestCase):
    """Every family acts on the right, transitively, with the stated orders."""

    def setUp(self):
        self.rng = SeededRng(2024)

    def test_right_action_convention(self):
        """act(compose(g, h), p) == act(h, act(g, p)) for every point."""
        for text in SMALL_SPECS:
            instance = build_action(text)
            points = np.arange(instance.degree)
            for _ in range(10):
                g = instance.sample_uniform(self.rng)
                h = instance.sample_uniform(self.rng)
                with self.subTest(spec=text):
                    np.testing.assert_array_equal(
                        instance.act_many(instance.compose(g, h), points),
                        instance.act_many(h, instance.act_many(g, points)),
                    )

    def test_inverse_and_identity(self):
        for text in SMALL_SPECS:
            instance = build_action(text)
            identity = instance.materialize(instance.identity())
            np.testing.assert_array_equal(identity, np.arange(instance.degree))
            for _ in range(10):
                g = instance.sample_uniform(self.rng)
                with self.subTest(spec=text):
                    self.assertEqual(instance.compose(g, instance.invert(g)), instance.identity())
                    self.assertEqual(instance.compose(instance.invert(g), g), instance.identity())

    def test_materialize_gives_permutations(self):
        for text in SMALL_SPECS:
            instance = build_action(text)
            table = instance.materialize(instance.sample_uniform(self.rng))
            with self.subTest(spec=text):
                np.testing.assert_array_equal(np.sort(table), np.arange(instance.degree))

    def test_degrees_and_orders(self):
        expected = {
            "sym:n=5": (5, 120),
            "sym-tuples:n=5,r=2": (20, 120),
            "cyclic:m=12": (12, 12),
            "abelian:m=3,d=3": (27, 27),
            "dihedral:m=7": (7, 14),
            "affine:p=7": (7, 42),
            "proj:p=5": (6, 120),
        }
        for text, (degree, order) in expected.items():
            instance = build_action(text)
            with self.subTest(spec=text):
                self.assertEqual(instance.degree, degree)
                self.assertEqual(instance.group_order, order)
                self.assertEqual(instance.stabilizer_order, order // degree)

    def test_enumeration_lists_each_element_once(self):
        for text in SMALL_SPECS:
            instance = build_action(text)
            elements = instance.enumerate_group(budget=1000)
            with self.subTest(spec=text):
                self.assertEqual(len(elements), instance.group_order)
                self.assertEqual(len(set(elements)), instance.group_order)

    def test_transitive(self):
        """The images of point 0 over the whole group cover Omega."""
        for text in SMALL_SPECS:
            instance = build_action(text)
            orbit = {instance.act(g, 0) for g in instance.enumerate_group(budget=1000)}
            with self.subTest(spec=text):
                self.assertEqual(orbit, set(range(instance.degree)))

    def test_large_symmetric_order_is_unknown(self):
        instance = build_action("sym:n=25")
        self.assertIsNone(instance.group_order)
        self.assertAlmostEqual(instance.group_order_log, sum(np.log(np.arange(1, 26))), places=6)
        with self.assertRaises(BudgetExceeded):
            instance.enumerate_group(budget=10**6)

    def test_errors(self):
        cyclic = build_action("cyclic:m=6")
        dihedral = build_action("dihedral:m=6")
        g = cyclic.element(1)
        with self.assertRaises(PointOutOfRange):
            cyclic.act(g, 6)
        with self.assertRaises(FamilyMismatch):
            dihedral.act(g, 0)
        with self.assertRaises(FamilyMismatch):
            cyclic.compose(g, dihedral.identity())
        with self.assertRaises(InvalidFamilyParams):
            build_action("affine:p=7").element((0, 1))


class TestConcreteActions(unittest.TestCase):
    """Hand-checked images for each family."""

    def test_cyclic_shift(self):
        instance = build_action("cyclic:m=6")
        self.assertEqual(instance.act(instance.element(2), 5), 1)

    def test_dihedral_reflection_composition(self):
        instance = build_action("dihedral:m=5")
        rotate = instance.element((1, 0))
        reflect = instance.element((0, 1))
        points = np.arange(5)
        np.testing.assert_array_equal(instance.act_many(reflect, points), (-points) % 5)
        np.testing.assert_array_equal(
            instance.act_many(instance.compose(rotate, reflect), points), (-(points + 1)) % 5
        )

    def test_affine_map(self):
        instance = build_action("affine:p=7")
        self.assertEqual(instance.act(instance.element((3, 2)), 4), (3 * 4 + 2) % 7)

    def test_projective_infinity(self):
        """x -> 1/x swaps 0 and infinity."""
        instance = build_action("proj:p=5")
        swap = instance.element((0, 1, 1, 0))
        self.assertEqual(instance.act(swap, 0), 5)
        self.assertEqual(instance.act(swap, 5), 0)
        self.assertEqual(instance.act(swap, 2), 3)

    def test_tuple_indices_are_lexicographic(self):
        """Indices of r-tuples follow the lexicographic order of permutations."""
        instance = build_action("sym-tuples:n=5,r=3")
        expected = list(itertools.permutations(range(5), 3))
        self.assertEqual([instance.decode_index(i) for i in range(instance.degree)], expected)
        self.assertEqual(instance.encode_tuple((4, 0, 2)), expected.index((4, 0, 2)))

    def test_tuple_action_moves_coordinates(self):
        instance = build_action("sym-tuples:n=4,r=2")
        g = instance.element(np.array([1, 2, 3, 0]))
        point = instance.encode_tuple((0, 3))
        self.assertEqual(instance.decode_index(instance.act(g, point)), (1, 0))


class TestFamilyForDegree(unittest.TestCase):
    """Scaling a family to the largest degree below a target."""

    def test_degrees(self):
        for family, n, degree in [
            ("sym", 100, 100), ("cyclic", 100, 100), ("dihedral", 100, 100),
            ("sym-tuples", 100, 90), ("abelian", 100, 64), ("affine", 100, 97), ("proj", 100, 98),
        ]:
            with self.subTest(family=family):
                instance = build_action(family_for_degree(family, n))
                self.assertEqual(instance.degree, degree)
                self.assertEqual(instance.family, FamilyName(family))

    def test_prime_families_use_primes(self):
        for n in (10, 100, 1000, 4096):
            with self.subTest(n=n):
                self.assertTrue(isprime(family_for_degree("affine", n).get("p")))
                projective = family_for_degree("proj", n)
                self.assertTrue(isprime(projective.get("p")))
                self.assertLessEqual(projective.get("p") + 1, n)

    def test_too_small(self):
        with self.assertRaises(InvalidFamilyParams):
            family_for_degree("affine", 1)


class TestUniformity(unittest.TestCase):
    """Chi-square checks on the uniform samplers."""

    def test_elements_are_uniform(self):
        for text in ("sym:n=3", "proj:p=3", "affine:p=5", "dihedral:m=4"):
            with self.subTest(spec=text):
                self.assertGreater(element_uniformity(build_action(text), SeededRng(11), 6000), 1e-3)

    def test_point_images_are_uniform(self):
        for text in ("sym:n=40", "sym-tuples:n=6,r=2", "proj:p=11", "abelian:m=2,d=5"):
            with self.subTest(spec=text):
                self.assertGreater(image_uniformity(build_action(text), SeededRng(5), 8000), 1e-3)


if __name__ == '__main__':
    unittest.main()
