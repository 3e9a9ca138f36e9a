pub mod caustics;
pub mod fano;
pub mod sixj;
pub mod verify;
pub mod volume;
