//! Exact modular representation theory of finite groups in characteristic 2.

pub mod blk;
pub mod brc;
pub mod cli;
pub mod clf;
pub mod error;
pub mod fld;
pub mod frm;
pub mod grp;
pub mod mat;
pub mod rep;
pub mod report;

pub use error::{Error, Result};
