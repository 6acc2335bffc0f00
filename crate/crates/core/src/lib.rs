//! Exact arithmetic for Tits forms of bound quivers.
//!
//! A triangular bound quiver `kQ/I` is read from a small text format
//! ([`presentation`]) and turned into its Tits form, an integral unit form
//! ([`unitform`]). The form is classified as weakly positive, weakly
//! non-negative or neither by bounded searches backed by a scan over critical
//! and hypercritical restrictions ([`classify`]). [`roots`] enumerates positive
//! and omnipresent roots, decides maximality, reports exceptional indices and
//! builds reflection chains. [`realize`] probes whether a dimension vector
//! carries an indecomposable representation over `F_2`, `F_3` or `F_5`.
//!
//! All integer arithmetic is checked; overflow is reported as
//! [`Error::Overflow`] instead of wrapping.
//!
//! ```
//! use titsform::{parse_document, IntVector};
//! use titsform::classify::{is_weakly_positive, ClassifyConfig, Verdict};
//!
//! let doc = parse_document("[form]\nn = 3\nedge 1 2 -1\nedge 2 3 -1\n").unwrap();
//! let q = doc.form();
//! assert_eq!(q.evaluate(&IntVector::new(vec![1, 1, 1])).unwrap(), 1);
//! let r = is_weakly_positive(&q, &ClassifyConfig::default()).unwrap();
//! assert_eq!(r.verdict, Verdict::WeaklyPositive);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod presentation;
pub mod realize;
pub mod report;
pub mod roots;
pub mod unitform;
pub mod vector;

pub use error::{Error, Result};
pub use presentation::{parse_document, parse_presentation, InputDocument, Presentation, Quiver, Relation, Source};
pub use unitform::{RootStatus, UnitForm};
pub use vector::IntVector;
