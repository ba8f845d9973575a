pub mod demos;
pub mod family;
pub mod flows;
pub mod limits;
pub mod lts;
pub mod maps;
pub mod order;
pub mod sample;
