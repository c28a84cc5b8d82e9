use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernel::Term;

/// Source of a wire: a primary input or the output of an earlier gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireRef {
    Input(usize),
    Gate(usize),
}

impl fmt::Display for WireRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WireRef::Input(i) => write!(f, "in{i}"),
            WireRef::Gate(g) => write!(f, "g{g}"),
        }
    }
}

impl FromStr for WireRef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |digits: &str| digits.parse::<usize>().map_err(|_| format!("bad wire `{s}`"));
        if let Some(rest) = s.strip_prefix("in") {
            parse(rest).map(WireRef::Input)
        } else if let Some(rest) = s.strip_prefix('g') {
            parse(rest).map(WireRef::Gate)
        } else {
            Err(format!("bad wire `{s}`"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NandGate {
    pub a: WireRef,
    pub b: WireRef,
}

/// A flattened combinational circuit. Gates are topologically ordered: each
/// gate only reads primary inputs and earlier gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Netlist {
    pub inputs: usize,
    pub outputs: usize,
    pub gates: Vec<NandGate>,
    pub output_map: Vec<WireRef>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitError {
    #[error("non-circuit construct {construct} at {path}")]
    NonCircuitConstruct { construct: &'static str, path: String },
    #[error("circuit arity error at {path}: {message}")]
    BadArity { path: String, message: String },
    #[error("expected {expected} input bits, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("truth table of {0} inputs exceeds the limit of {MAX_TABLE_INPUTS}")]
    TooManyInputs(usize),
    #[error("malformed netlist: {0}")]
    Malformed(String),
}

pub const MAX_TABLE_INPUTS: usize = 20;

fn construct_name(t: &Term) -> &'static str {
    match t {
        Term::Var(_) => "variable",
        Term::App(..) => "application",
        Term::Lam(..) => "lambda",
        Term::Quote(_) => "quote",
        Term::Splice(_) => "splice",
        Term::Zero | Term::Succ(_) | Term::Iter(..) => "natural number",
        Term::True | Term::False | Term::If(..) => "boolean",
        Term::Pair(..) | Term::Fst(_) | Term::Snd(_) => "pair",
        Term::Nand => "nand",
        Term::Par(..) => "par",
        Term::Seq(..) => "seq",
        Term::Mix { .. } => "mix",
    }
}

fn render_path(path: &[&'static str]) -> String {
    std::iter::once("root").chain(path.iter().copied()).collect::<Vec<_>>().join(".")
}

/// Input and output arity of a first-order circuit term.
pub fn circuit_arity(t: &Term) -> Result<(usize, usize), CircuitError> {
    arity_at(t, &mut Vec::new())
}

fn arity_at(t: &Term, path: &mut Vec<&'static str>) -> Result<(usize, usize), CircuitError> {
    let sub = |field, u: &Term, path: &mut Vec<&'static str>| {
        path.push(field);
        let r = arity_at(u, path)?;
        path.pop();
        Ok::<_, CircuitError>(r)
    };
    match t {
        Term::Nand => Ok((2, 1)),
        Term::Par(l, r) => {
            let (i1, o1) = sub("par.left", l, path)?;
            let (i2, o2) = sub("par.right", r, path)?;
            Ok((i1 + i2, o1 + o2))
        }
        Term::Seq(l, r) => {
            let (i, m1) = sub("seq.left", l, path)?;
            let (m2, o) = sub("seq.right", r, path)?;
            if m1 != m2 {
                return Err(CircuitError::BadArity {
                    path: render_path(path),
                    message: format!("{m1} outputs feed a circuit with {m2} inputs"),
                });
            }
            Ok((i, o))
        }
        Term::Mix { inputs, wires } => {
            if let Some(w) = wires.iter().find(|w| **w >= *inputs) {
                return Err(CircuitError::BadArity {
                    path: render_path(path),
                    message: format!("wire {w} of a {inputs}-input mix"),
                });
            }
            Ok((*inputs, wires.len()))
        }
        other => Err(CircuitError::NonCircuitConstruct {
            construct: construct_name(other),
            path: render_path(path),
        }),
    }
}

/// Flattens a staged circuit term into a netlist.
pub fn to_netlist(t: &Term) -> Result<Netlist, CircuitError> {
    let (inputs, outputs) = circuit_arity(t)?;
    let mut gates = Vec::new();
    let ins: Vec<WireRef> = (0..inputs).map(WireRef::Input).collect();
    let output_map = flatten(t, &ins, &mut gates)?;
    debug_assert_eq!(output_map.len(), outputs);
    Ok(Netlist { inputs, outputs, gates, output_map })
}

fn flatten(
    t: &Term,
    ins: &[WireRef],
    gates: &mut Vec<NandGate>,
) -> Result<Vec<WireRef>, CircuitError> {
    match t {
        Term::Nand => {
            gates.push(NandGate { a: ins[0], b: ins[1] });
            Ok(vec![WireRef::Gate(gates.len() - 1)])
        }
        Term::Par(l, r) => {
            let (split, _) = circuit_arity(l)?;
            let mut outs = flatten(l, &ins[..split], gates)?;
            outs.extend(flatten(r, &ins[split..], gates)?);
            Ok(outs)
        }
        Term::Seq(l, r) => {
            let mid = flatten(l, ins, gates)?;
            flatten(r, &mid, gates)
        }
        Term::Mix { wires, .. } => Ok(wires.iter().map(|w| ins[*w]).collect()),
        _ => unreachable!("arity check admits circuit constructors only"),
    }
}

impl Netlist {
    /// Checks the wiring invariants.
    pub fn check(&self) -> Result<(), CircuitError> {
        let ok = |r: WireRef, before: usize| match r {
            WireRef::Input(i) => i < self.inputs,
            WireRef::Gate(g) => g < before,
        };
        for (k, gate) in self.gates.iter().enumerate() {
            if !ok(gate.a, k) || !ok(gate.b, k) {
                return Err(CircuitError::Malformed(format!("gate {k} reads an unavailable wire")));
            }
        }
        if self.output_map.len() != self.outputs {
            return Err(CircuitError::Malformed(format!(
                "{} outputs declared, {} wired",
                self.outputs,
                self.output_map.len()
            )));
        }
        if let Some(j) = self.output_map.iter().position(|r| !ok(*r, self.gates.len())) {
            return Err(CircuitError::Malformed(format!("output {j} reads an unknown wire")));
        }
        Ok(())
    }

    /// Evaluates the circuit on one input vector; `true` is a high bit.
    pub fn simulate(&self, bits: &[bool]) -> Result<Vec<bool>, CircuitError> {
        if bits.len() != self.inputs {
            return Err(CircuitError::ArityMismatch { expected: self.inputs, got: bits.len() });
        }
        let mut values = Vec::with_capacity(self.gates.len());
        let read = |r: WireRef, values: &[bool]| match r {
            WireRef::Input(i) => bits[i],
            WireRef::Gate(g) => values[g],
        };
        for gate in &self.gates {
            let v = !(read(gate.a, &values) && read(gate.b, &values));
            values.push(v);
        }
        Ok(self.output_map.iter().map(|r| read(*r, &values)).collect())
    }

    /// All input vectors in ascending binary order (input 0 most significant)
    /// with their outputs.
    pub fn truth_table(&self) -> Result<Vec<(Vec<bool>, Vec<bool>)>, CircuitError> {
        if self.inputs > MAX_TABLE_INPUTS {
            return Err(CircuitError::TooManyInputs(self.inputs));
        }
        (0..1usize << self.inputs)
            .map(|row| {
                let bits = row_bits(row, self.inputs);
                let out = self.simulate(&bits)?;
                Ok((bits, out))
            })
            .collect()
    }
}

fn row_bits(row: usize, width: usize) -> Vec<bool> {
    (0..width).map(|j| (row >> (width - 1 - j)) & 1 == 1).collect()
}

/// Renders bits as a string of `0`/`1`.
pub fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

/// Parses a string of `0`/`1`.
pub fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

/// Line-based text format:
///
/// ```text
/// inputs 1 outputs 1
/// gate 0 = nand in0 in0
/// out 0 = g0
/// ```
impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "inputs {} outputs {}", self.inputs, self.outputs)?;
        for (k, g) in self.gates.iter().enumerate() {
            writeln!(f, "gate {k} = nand {} {}", g.a, g.b)?;
        }
        for (j, r) in self.output_map.iter().enumerate() {
            writeln!(f, "out {j} = {r}")?;
        }
        Ok(())
    }
}

impl FromStr for Netlist {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |line: usize, msg: String| CircuitError::Malformed(format!("line {}: {msg}", line + 1));
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (n, header) = lines.next().ok_or_else(|| bad(0, "missing header".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let (inputs, outputs) = match words.as_slice() {
            ["inputs", i, "outputs", o] => (
                i.parse().map_err(|_| bad(n, format!("bad input count `{i}`")))?,
                o.parse().map_err(|_| bad(n, format!("bad output count `{o}`")))?,
            ),
            _ => return Err(bad(n, format!("bad header `{header}`"))),
        };
        let mut gates = Vec::new();
        let mut output_map = Vec::new();
        for (n, line) in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            let index = |k: &str, expected: usize| match k.parse::<usize>() {
                Ok(v) if v == expected => Ok(()),
                _ => Err(bad(n, format!("expected index {expected}, found `{k}`"))),
            };
            let wire = |w: &str| w.parse::<WireRef>().map_err(|e| bad(n, e));
            match words.as_slice() {
                ["gate", k, "=", "nand", a, b] if output_map.is_empty() => {
                    index(k, gates.len())?;
                    gates.push(NandGate { a: wire(a)?, b: wire(b)? });
                }
                ["out", j, "=", r] => {
                    index(j, output_map.len())?;
                    output_map.push(wire(r)?);
                }
                _ => return Err(bad(n, format!("unexpected line `{line}`"))),
            }
        }
        let netlist = Netlist { inputs, outputs, gates, output_map };
        netlist.check()?;
        Ok(netlist)
    }
}
