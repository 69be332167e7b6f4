pub mod boolspace;
pub mod dimension;
pub mod filters;
pub mod lgroup;
pub mod ordinal;
pub mod suite;
pub mod ziegler;
