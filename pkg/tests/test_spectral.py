import math

import mock
import pytest

from algentropy import catalog, spectral
from algentropy.linalg import (
    IntMatrix,
    IntPolynomial,
    SingularMatrixError,
    char_poly,
    determinant,
)
from algentropy.spectral import (
    ConsistencyError,
    Estimate,
    RootFindingError,
    algebraic_entropy,
    convergence_profile,
    dynamical_degrees,
    entropy_report,
    gelfand_profile,
    inverse_spectral_radius,
    poly_roots,
    spectral_radius,
    toral_entropy,
)

COUNTEREXAMPLE = IntMatrix([[-1, 1, 0], [-1, 0, 1], [1, 0, 0]])
RHO = 1.356203065
GOLDEN = (1 + math.sqrt(5)) / 2
DENSE7 = IntMatrix(
    [
        [-2, 4, 3, -3, 0, 4, 2],
        [5, 4, -4, 4, -5, 2, -1],
        [3, -2, -2, 2, 3, 3, 2],
        [1, 5, -3, -2, 5, -3, 3],
        [1, -5, 5, -4, -3, 4, -5],
        [-1, -5, -1, 2, 4, 1, 1],
        [1, 4, 2, -3, 0, -4, -5],
    ]
)


class TestPolyRoots(object):
    def test_quadratic(self):
        roots = poly_roots(IntPolynomial([-2, 0, 1]))
        assert len(roots) == 2
        reals = sorted(root.value.real for root in roots)
        assert reals == pytest.approx([-math.sqrt(2), math.sqrt(2)])
        assert roots.max_modulus() == pytest.approx(math.sqrt(2))

    def test_inclusion_intervals_contain_modulus(self):
        for root in poly_roots(char_poly(COUNTEREXAMPLE)):
            assert root.modulus_lo <= root.modulus <= root.modulus_hi
            assert root.residual < 1e-10

    def test_large_roots_and_coefficients(self):
        # t^3 - 10^18
        roots = poly_roots(IntPolynomial([-(10 ** 18), 0, 0, 1]))
        assert roots.max_modulus() == pytest.approx(1e6, rel=1e-12)
        assert all(root.modulus_lo <= 1e6 <= root.modulus_hi for root in roots)

    def test_multiplicity(self):
        # (t - 1)^2 (t + 2)
        roots = poly_roots(IntPolynomial([2, -3, 0, 1]))
        assert len(roots) == 3
        assert [r.multiplicity for r in roots].count(2) == 2

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            poly_roots(IntPolynomial([3]))

    def test_no_convergence(self):
        with pytest.raises(RootFindingError):
            poly_roots(char_poly(COUNTEREXAMPLE), max_steps=1)


class TestSpectralRadius(object):
    def test_counterexample(self):
        estimate = spectral_radius(COUNTEREXAMPLE)
        assert estimate.value == pytest.approx(RHO, abs=1e-9)
        assert estimate.error < 1e-9

    def test_golden_ratio(self):
        assert spectral_radius(IntMatrix([[0, 1], [1, 1]])).value == pytest.approx(GOLDEN)

    def test_inverse_is_rho_squared(self):
        inverse = inverse_spectral_radius(COUNTEREXAMPLE)
        assert inverse.value == pytest.approx(RHO ** 2, abs=1e-8)
        assert inverse.value == pytest.approx(1.8392867552, abs=1e-9)

    def test_rational_inverse(self):
        assert inverse_spectral_radius(IntMatrix([[1, 2], [-2, 1]])).value == pytest.approx(
            1 / math.sqrt(5)
        )

    def test_gelfand_violation_detected(self):
        with mock.patch("algentropy.spectral.poly_roots") as roots:
            roots.return_value = poly_roots(IntPolynomial([-100, 0, 1]))
            with pytest.raises(ConsistencyError):
                spectral_radius(IntMatrix([[0, 1], [1, 1]]))

    def test_log_of_zero(self):
        assert Estimate(0.0, 0.0).log().value == float("-inf")


class TestEntropies(object):
    def test_algebraic_entropy(self):
        assert algebraic_entropy(COUNTEREXAMPLE) == pytest.approx(math.log(RHO), abs=1e-9)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            algebraic_entropy(IntMatrix([[1, 1], [1, 1]]))

    def test_diagonal(self):
        A = IntMatrix.diagonal(2, 3)
        assert algebraic_entropy(A) == pytest.approx(math.log(3))
        toral = toral_entropy(A)
        assert toral.value == pytest.approx(math.log(6))
        assert toral.method == "compound-matrices"
        assert toral.root_route == pytest.approx(toral.compound_route)

    def test_identity_has_zero_entropy(self):
        toral = toral_entropy(IntMatrix.identity(3))
        assert toral.value == pytest.approx(0.0)
        assert not toral.ambiguous

    def test_toral_counterexample(self):
        assert toral_entropy(COUNTEREXAMPLE).value == pytest.approx(2 * math.log(RHO), abs=1e-8)

    def test_large_dimension_skips_compound_route(self):
        with mock.patch.object(spectral, "COMPOUND_ROUTE_MAX_DIM", 2):
            toral = toral_entropy(COUNTEREXAMPLE)
        assert toral.method == "roots"
        assert toral.compound_route is None

    def test_dynamical_degrees(self):
        degrees = dynamical_degrees(COUNTEREXAMPLE)
        assert degrees == pytest.approx([math.log(RHO), 2 * math.log(RHO), 0.0], abs=1e-8)

    def test_seven_by_seven(self):
        toral = toral_entropy(DENSE7)
        assert toral.method == "compound-matrices"
        assert toral.root_route == pytest.approx(toral.compound_route, abs=1e-8)
        assert algebraic_entropy(DENSE7) <= toral.value + 1e-9
        top = dynamical_degrees(DENSE7)[-1]
        assert top == pytest.approx(math.log(abs(determinant(DENSE7))), abs=1e-8)


class TestReport(object):
    def test_counterexample_report(self):
        report = entropy_report(COUNTEREXAMPLE)
        assert report.algebraic_entropy == pytest.approx(math.log(RHO), abs=1e-9)
        assert report.conjectural == (False, True, False)
        assert report.methods["toral_entropy"] == "compound-matrices"
        assert not report.ambiguous

    def test_as_dict(self):
        payload = entropy_report(IntMatrix([[0, 1], [1, 1]])).as_dict()
        assert payload["algebraic_entropy"] == pytest.approx(math.log(GOLDEN))
        assert payload["conjectural"] == [False, False]
        assert len(payload["error_bounds"]["dynamical_degrees"]) == 2

    def test_options_are_forwarded(self):
        report = entropy_report(COUNTEREXAMPLE, gelfand_cap=5, max_steps=200, precision=40)
        assert report.toral_entropy == pytest.approx(2 * math.log(RHO), abs=1e-8)


class TestProfiles(object):
    def test_convergence_profile(self):
        profile = convergence_profile(COUNTEREXAMPLE, 20)
        assert len(profile.points) == 20
        assert profile.points[0] == (1, math.log(2))
        assert profile.limit == pytest.approx(math.log(RHO), abs=1e-9)
        assert profile.deviation == pytest.approx(math.log(833) / 20 - math.log(RHO), abs=1e-9)

    def test_nmax_checked(self):
        with pytest.raises(ValueError):
            convergence_profile(COUNTEREXAMPLE, 0)

    def test_gelfand_profile_bounds_entropy(self):
        for _, value in gelfand_profile(COUNTEREXAMPLE, 30):
            assert value >= math.log(RHO) - 1e-12


class TestCatalogMatrices(object):
    @pytest.fixture(params=catalog.names("monomial"))
    def matrix(self, request):
        return catalog.load(request.param).matrix

    def test_toral_routes_agree(self, matrix):
        toral = toral_entropy(matrix)
        assert toral.root_route == pytest.approx(toral.compound_route, abs=1e-8)

    def test_degree_growth_approaches_entropy(self, matrix):
        profile = convergence_profile(matrix, 60)
        assert abs(profile.deviation) < 0.05
