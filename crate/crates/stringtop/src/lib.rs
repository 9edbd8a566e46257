//! String-topology operations on free loop spaces, exactly.
//!
//! Two halves:
//!
//! * an algebraic model of `H_*(Lambda S^n)` for odd `n >= 3` — loop product,
//!   dual cohomology product, lifted coproduct and its iterates, circle
//!   action, Kronecker pairing, and the intersection-multiplicity invariant
//!   ([`sphere`], built on the graded formal sums of [`graded`]);
//! * a geometric realization of the coproduct on polygonal loops in the plane
//!   and the flat torus, with exact rational arithmetic ([`geom`]).
//!
//! The `examples/` directory has one runnable program per capability; the
//! `stringtop` binary exposes the same operations as `eval`, `table` and
//! `geom` subcommands.

pub mod expr;
pub mod geom;
pub mod graded;
pub mod sphere;
pub mod table;
