//! Exact computations with matrix factorizations over a polynomial ring
//! `S = F_p[x1..xn]` and with modules over the hypersurface ring
//! `R = S/(W - w0)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`ring`]: sparse polynomials over a prime field, division and
//!   reduced Groebner bases of ideals.
//! * [`module`]: polynomial matrices, submodule Groebner bases, syzygies,
//!   lifting, finitely presented modules, `Hom`, `Ext` and vector-space
//!   dimensions.
//! * [`mf`]: matrix factorizations, their morphisms, the `Z/2`-graded Hom
//!   complex, shift, cone, totalization and homotopy solving.
//! * [`singcat`]: the cokernel functor, resolutions over `R`, the
//!   Cohen-Macaulay test, stabilization, transport of module maps and
//!   stable Hom.
//! * [`cli`]: the text bundle format, the example catalog and command
//!   dispatch used by the `mfsing` binary.

pub mod cli;
pub mod error;
pub mod mf;
pub mod module;
pub mod ring;
pub mod singcat;

pub use error::{Error, Result};

mod gb;
