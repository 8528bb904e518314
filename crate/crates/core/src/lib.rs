pub mod algebra;
pub mod bounds;
pub mod cgmodel;
pub mod cli;
pub mod error;
pub mod knotdb;
pub mod laurent;
pub mod linkform;
pub mod metlab;
pub mod reproduce;
pub mod seifert;

pub use error::{Error, Result};
