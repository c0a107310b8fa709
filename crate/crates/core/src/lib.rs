//! Diaries: maps between sentence-trees, with checks that bound how far
//! they can shrink distances, and the embedding of the hexagonal Coxeter
//! group into a product of two bounded-valence trees built from them.

pub mod codec;
pub mod diary;
pub mod embed;
pub mod harness;
pub mod hexgroup;
pub mod oracles;
pub mod rational;
pub mod statistics;
pub mod words;
