//! Floquet codes on semi-regular hyperbolic tessellations of closed surfaces.
//!
//! Module map, bottom-up:
//!
//! - [`hypgeo`]: curvature -1 metrics of regular and semi-regular tilings.
//! - [`surface`]: combinatorial surface complexes and their invariants.
//! - [`derive`]: clipping and incenter derivations, as counts and as maps.
//! - [`coloring`]: face 3-colorings and the colored two-body checks.
//! - [`floquet`]: Pauli algebra, stabilizer-group evolution and exact distance.
//! - [`geodist`]: geometric distance estimate from systole and chords.
//! - [`catalog`]: signature enumeration, code tables and reference comparison.

pub mod catalog;
pub mod coloring;
pub mod derive;
pub mod floquet;
pub mod geodist;
pub mod hypgeo;
pub mod surface;

use thiserror::Error;

/// Any error of the crate, prefixed by the module that raised it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("hypgeo: {0}")]
    Geometry(hypgeo::GeometryError),
    #[error("surface: {0}")]
    Surface(surface::SurfaceError),
    #[error("derive: {0}")]
    Derive(derive::DeriveError),
    #[error("coloring: {0}")]
    Coloring(coloring::ColoringError),
    #[error("floquet: {0}")]
    Floquet(floquet::FloquetError),
    #[error("catalog: {0}")]
    Catalog(catalog::CatalogError),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<hypgeo::GeometryError> for Error {
    fn from(e: hypgeo::GeometryError) -> Self {
        Error::Geometry(e)
    }
}

impl From<surface::SurfaceError> for Error {
    fn from(e: surface::SurfaceError) -> Self {
        match e {
            surface::SurfaceError::Geometry(g) => Error::Geometry(g),
            other => Error::Surface(other),
        }
    }
}

impl From<derive::DeriveError> for Error {
    fn from(e: derive::DeriveError) -> Self {
        match e {
            derive::DeriveError::Geometry(g) => Error::Geometry(g),
            derive::DeriveError::Surface(s) => s.into(),
            other => Error::Derive(other),
        }
    }
}

impl From<coloring::ColoringError> for Error {
    fn from(e: coloring::ColoringError) -> Self {
        Error::Coloring(e)
    }
}

impl From<floquet::FloquetError> for Error {
    fn from(e: floquet::FloquetError) -> Self {
        Error::Floquet(e)
    }
}

impl From<catalog::CatalogError> for Error {
    fn from(e: catalog::CatalogError) -> Self {
        Error::Catalog(e)
    }
}
