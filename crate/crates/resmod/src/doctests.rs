//! Doc-tests for the guide in `book/`.
//!
//! Each chapter is included as module documentation, so every Rust snippet
//! in the book is compiled and executed by `cargo test --doc`. A snippet
//! that drifts from the current API fails the test suite; the guide cannot
//! silently rot.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        #[allow(unused)]
        mod $name {}
    };
}

chapter!(introduction, "../../../book/src/introduction.md");
chapter!(algebras, "../../../book/src/algebras.md");
chapter!(coefficients, "../../../book/src/coefficients.md");
chapter!(harmonics, "../../../book/src/harmonics.md");
chapter!(models, "../../../book/src/models.md");
chapter!(integration, "../../../book/src/integration.md");
chapter!(resonance, "../../../book/src/resonance.md");
chapter!(cli, "../../../book/src/cli.md");
