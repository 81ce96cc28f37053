//! Shared setup for the benchmark targets.

use llvkit::{BBFLattice, MukaiExtension, QVector, SymBasis};

pub fn kummer_extension(n: u32) -> MukaiExtension {
    MukaiExtension::new(BBFLattice::kummer(n).expect("n >= 2")).expect("non-degenerate")
}

pub fn kummer_sym_basis(n_lattice: u32, n_sym: u32) -> SymBasis {
    SymBasis::new(&kummer_extension(n_lattice), n_sym)
}

/// A fixed norm-2 class in the first hyperbolic block.
pub fn norm_two_class() -> QVector {
    QVector::from_ints(&[1, 1, 0, 0, 0, 0, 0])
}
