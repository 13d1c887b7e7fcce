//! Exact arithmetic over ℤ and ℚ: rationals, polynomials, factorization,
//! resultants and p-adic Newton polygons.

mod factor;
mod integer;
mod modp;
mod newton;
mod poly;
mod rat;
mod resultant;

pub use factor::{factor_poly, factor_poly_seeded, is_irreducible, Factorization};
pub use integer::{cyclotomic, euler_phi, factor_integer, is_prime, lcm_u64};
pub use newton::{newton_polygon, NewtonPolygon};
pub use poly::RatPoly;
pub(crate) use rat::{denom_lcm, simplest_between};
pub use rat::{frac, parse_rat, rat, valuation, BigInt, BigUint, Rat};
pub use resultant::{interpolate, resultant};
