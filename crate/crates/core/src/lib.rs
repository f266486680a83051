//! Coset enumeration and verification toolkit for finite quotients of string
//! Coxeter groups.

pub mod enumerator;
pub mod gf2;
pub mod permgroup;
pub mod polytope;
pub mod presentation;
