//! Hughes arrows on a finite base category.

pub struct Placeholder;
