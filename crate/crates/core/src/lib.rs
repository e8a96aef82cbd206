//! Exact reconstruction of Jordan division algebras, skewfields and
//! pseudo-quadratic forms from rank one groups acting cubically on modules.
//!
//! Modules are right modules over a prime field and group elements act on the
//! right of row vectors.

pub mod field;
pub mod linalg;
pub mod scalars;
pub mod jordanalg;
pub mod check;
pub mod catalog_checks;
pub mod groupcore;
pub mod formspaces;
pub mod reconstruct;
pub mod scenarios;
