//! Exterior calculus with rational-function coefficients on a coordinate
//! patch, and the Courant-algebroid structures built on it.

pub mod characteristic;
pub mod courant;
pub mod expr;
pub mod family;
pub mod field_gcs;
pub mod forms;
pub mod poly;
pub mod ratfun;

pub use poly::Poly;
pub use ratfun::RatFun;
pub use expr::parse_ratfun;
pub use forms::{FormField, VectorField};
pub use courant::{Section, StandardCourantModel};
pub use field_gcs::FieldGCS;
pub use family::{family_verdict, Embedding, FamilyVerdict};
