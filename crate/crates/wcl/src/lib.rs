//! Text formats, the `wcl` command line tool and the self-test suite for
//! weighted configuration logics.

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod formats;
pub mod gen;
pub mod settings;
pub mod syntax;

pub use error::{Error, Result};
