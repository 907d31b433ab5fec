pub mod cotorsion;
pub mod dsl;
pub mod engine;
pub mod kernel;
pub mod ring;
pub mod specset;
