//! Ring extensions `A ⊂ B` presented by generators and relations:
//! Groebner bases, finite algebras and their idempotents, seminormal and
//! anodal witnesses, conductors, fiber components and the rank of the
//! Laurent part of the relative Cartier divisor group.

pub mod polycore;
pub mod artinian;
pub mod extensions;
pub mod cartier;
pub mod laurent;
pub mod cli;
