//! The group file format and the small-group enumerator behind the
//! `twovalued` command.

pub mod enumerate;
pub mod io;
