//! Coxeter decompositions of hyperbolic tetrahedra.
//!
//! The geometry is generic over the scalar ([`real::Real`], implemented for `f32` and
//! `f64`); the aliases below fix it to `f64`, which every search and table uses.

pub mod angle;
pub mod linalg;
pub mod real;
pub mod shape;
pub mod volume;
pub mod diagram;
pub mod catalog;
pub mod triangle2d;
pub mod hyperboloid;
pub mod decomp;
pub mod second_type;

pub type Scalar = f64;
pub type Vec4 = linalg::Vec4<Scalar>;
pub type Mat4 = linalg::Mat4<Scalar>;
pub type Realization = hyperboloid::Realization<Scalar>;
pub type Fundamental = decomp::Fundamental<Scalar>;
pub type Decomposition = decomp::DecomposedTet<Scalar>;
pub type FaceTrace = decomp::FaceTrace<Scalar>;
pub type Family = decomp::Family<Scalar>;
pub type Volume = volume::VolumeValue<Scalar>;

pub use angle::{AngleFrac, EdgeMark};
pub use catalog::{Catalog, CatalogEntry};
pub use shape::TetShape;
