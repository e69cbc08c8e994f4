//! Sparse polynomials, monomial orders, Gröbner bases and ideal operations.

pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod presentation;
pub mod ring;

pub use groebner::{divide, Division, GroebnerBasis, GroebnerStats};
pub use ideal::{colon, groebner, ideal_member, normal_form, MembershipCertificate};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_list, parse_scalar};
pub use polynomial::{sum, Poly, Term};
pub use presentation::{AnyPresentation, RingConfig, RingPresentation};
pub use ring::{standard_ring, PolyRing};
