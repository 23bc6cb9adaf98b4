"""Exact symbolic workbench for semistar operations on fractional ideals
of concrete integral domains, and the Nagata and Kronecker function rings
they induce."""

__version__ = "0.1.0"

from .domains import (  # noqa: F401
    DomainError,
    FractionalIdeal,
    IdealOracle,
    IntegerDomain,
    PolyLocalDomain,
    PolyRat,
    PrimeIdeal,
    QuadraticOrderDomain,
    ValuationSpec,
    make_domain,
    valuation_value,
)
from .ideals import PolyIdeal, groebner_basis, poly_gcd, poly_lcm  # noqa: F401
from .newton import newton_closure_monomial  # noqa: F401
from .operations import (  # noqa: F401
    OperationError,
    SemistarOp,
    apply_star,
    check_axioms,
    check_eab,
    compare_ops,
    finite_type_closure,
    is_quasi_star_ideal,
    is_star_valuation_overring,
    make_builtin,
    quasi_star_spectrum,
    restrict_to_overring,
    star_a_lower,
    star_w_of,
    tilde_of,
)
from .function_rings import (  # noqa: F401
    MembershipCertificate,
    RationalFunctionElem,
    content_ideal,
    extend_contract_kr,
    extend_contract_na,
    in_multiplicative_set_N,
    kr_bezout_combine,
    kr_member,
    na_equal_iff_M,
    na_maximal_trace,
    na_member,
)
from .polys import Poly, MonomialOrder, DEGREVLEX, LEX  # noqa: F401
from .quadratic import QuadElem, QuadLattice  # noqa: F401
