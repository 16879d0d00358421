//! Shared fixtures for the criterion benches.

use prodwidth::graph::{generate, FamilySpec};
use prodwidth::{product, Graph, ProductKind};

pub fn family(spec: FamilySpec) -> Graph {
    generate(&spec).expect("valid family")
}

/// `f(a) * f(b)` for a named product.
pub fn product_of(a: FamilySpec, b: FamilySpec, kind: ProductKind) -> Graph {
    product(&family(a), &family(b), kind).expect("small product").base
}
