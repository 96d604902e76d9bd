//! Holds the `acceptance` test target, which runs after the other crates'
//! tests so a failing criterion does not hide them.
