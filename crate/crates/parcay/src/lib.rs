//! Partite presentations of graphs.
//!
//! A partite presentation `<X | U | I | phi | R>` describes a graph by a set
//! of vertex classes, generators acting on them and relators attached to each
//! class. This crate builds its partite Cayley graph `Sp(P)` by coset
//! enumeration, splits graphs into weak multicycle colourings, reads
//! presentations back off coloured graphs, and carries the standard examples.
//!
//! Start with the examples:
//!
//! ```text
//! cargo run --example presentations   # parse, validate, reduce words
//! cargo run --example petersen        # P(5,2) from two classes, not Cayley
//! cargo run --example balls           # balls of an infinite Sp(P)
//! cargo run --example decompose       # 2-factors, matchings, colourings
//! cargo run --example extract         # coloured graph -> presentation
//! cargo run --example line_graphs     # line graphs of Cayley graphs
//! cargo run --example two_ended       # the cubic two-ended graph
//! cargo run --example factorizations  # K_n factorizations
//! cargo run --example matchings       # miss sequences on windows
//! cargo run --example acceptance      # the full battery
//! ```

#![allow(clippy::needless_range_loop)]

pub mod builder;
pub mod cli;
pub mod constructions;
pub mod decompose;
pub mod extract;
pub mod graph;
pub mod infmatch;
pub mod presentation;
pub mod suite;
pub mod words;
