pub mod algebra;
pub mod padic;
pub mod report;
pub mod suites;
pub mod whittaker;
