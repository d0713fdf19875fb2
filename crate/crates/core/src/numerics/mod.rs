//! Self-contained numerical substrate: special functions, interpolation,
//! quadrature, ODE integration, eigensolvers, and derivative-free search.

pub mod eig;
pub mod interp;
pub mod neldermead;
pub mod ode;
pub mod quad;
pub mod root;
pub mod special;
