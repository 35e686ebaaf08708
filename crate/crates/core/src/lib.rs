pub mod arith;
pub mod chow;
pub mod report;
pub mod expr;
pub mod gw;
pub mod wdvv;
pub mod hyperelliptic;
pub mod crc;
