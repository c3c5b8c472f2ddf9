pub mod algebroid;
pub mod bialgebroid;
pub mod exterior;
pub mod report;
pub mod symbolic;
pub mod tduality;
pub mod dsl;
pub mod ledger;
