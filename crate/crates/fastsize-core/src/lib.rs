//! Core engine for conceptual aircraft sizing.
//!
//! The crate is organised around the sizing workflow: aircraft and mission
//! descriptions ([`model`]), historical-data regressions ([`regression`]),
//! propulsion architectures as directed graphs ([`powertrain`]), energy-based
//! point-mass mission analysis ([`mission`] with [`atmosphere`]), the
//! fixed-point weight convergence loop ([`sizing`]), and parametric wireframe
//! generation ([`geometry`]).
//!
//! Everything in here is pure computation over `alloc`; file formats, the
//! CLI, and plotting live in the companion `fastsize` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod atmosphere;
pub mod geometry;
mod linalg;
pub mod mission;
pub mod model;
pub mod powertrain;
pub mod regression;
pub mod sizing;

/// Standard acceleration of gravity, m/s².
pub const STANDARD_GRAVITY: f64 = 9.80665;
