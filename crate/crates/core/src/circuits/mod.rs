//! Staged circuit terms as netlists: flattening, simulation, truth tables,
//! and DOT rendering.

mod dot;
mod netlist;

pub use dot::emit_dot;
pub use netlist::{
    bit_string, circuit_arity, parse_bits, to_netlist, CircuitError, NandGate, Netlist, WireRef,
    MAX_TABLE_INPUTS,
};
