//! Line-oriented text format.
//!
//! ```text
//! # comment
//! wire d0 qubit data
//! wire a0 qubit ancilla
//! gate CNOT d0 a0
//! gate X d0 ctrl+ a0 ctrl- a1
//! gate U(0:0,1:0,1:0,0:0) d0
//! reset a0 @ 4
//! fault X d0 @ 1
//! ```

use super::{
    Circuit, CircuitError, Control, ErrorLocation, ErrorOp, Gate, GateKind, Polarity, Reset,
    Result, Unitary, Wire, WireKind, WireRole,
};
use crate::linalg::C64;
use std::fmt::Write;

fn syntax(line: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Syntax {
        line,
        message: message.into(),
    }
}

fn at(line: usize, e: CircuitError) -> CircuitError {
    CircuitError::AtLine {
        line,
        source: Box::new(e),
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut c = Circuit::new(Vec::new(), Vec::new(), Vec::new())?;
    let mut reset_lines = Vec::new();
    let mut fault_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some((&head, rest)) = tokens.split_first() else {
            continue;
        };
        match head {
            "wire" => parse_wire(&mut c, rest, line)?,
            "gate" => {
                let g = parse_gate(&c, rest, line)?;
                c.push_gate(g).map_err(|e| at(line, e))?;
            }
            "reset" => {
                let (wire, step) = parse_at(&c, rest, line, "reset <wire> @ <step>")?;
                if c.reset_step(wire).is_some() {
                    return Err(CircuitError::NonMonotoneReset {
                        line,
                        wire: c.wires()[wire].name.clone(),
                    });
                }
                c.push_reset(Reset { wire, step }).map_err(|e| at(line, e))?;
                reset_lines.push(line);
            }
            "fault" => {
                let Some((&op, rest)) = rest.split_first() else {
                    return Err(syntax(line, "expected `fault <op> <wire> @ <step>`"));
                };
                let op = ErrorOp::from_name(op)
                    .ok_or_else(|| syntax(line, format!("unknown fault operator `{op}`")))?;
                let (wire, step) = parse_at(&c, rest, line, "fault <op> <wire> @ <step>")?;
                if op == ErrorOp::Leak && c.wires()[wire].dim() < 3 {
                    return Err(at(
                        line,
                        CircuitError::InvalidLocation("leakage needs a qutrit wire".into()),
                    ));
                }
                c.faults.push(ErrorLocation { step, wire, op });
                fault_lines.push(line);
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    // Steps can only be checked once every gate is known.
    let d = c.steps();
    for (r, &line) in c.resets().iter().zip(&reset_lines) {
        if r.step >= d {
            return Err(at(
                line,
                CircuitError::InvalidReset(format!(
                    "step {} is past the last snapshot {}",
                    r.step,
                    d - 1
                )),
            ));
        }
    }
    for (f, &line) in c.faults().iter().zip(&fault_lines) {
        if f.step >= d {
            return Err(at(
                line,
                CircuitError::InvalidLocation(format!(
                    "step {} is past the last snapshot {}",
                    f.step,
                    d - 1
                )),
            ));
        }
    }
    Ok(c)
}

fn parse_wire(c: &mut Circuit, rest: &[&str], line: usize) -> Result<()> {
    let [name, kind, role] = rest else {
        return Err(syntax(line, "expected `wire <name> <qubit|qutrit> <data|ancilla>`"));
    };
    let kind = match *kind {
        "qubit" => WireKind::Qubit,
        "qutrit" => WireKind::Qutrit,
        k => return Err(syntax(line, format!("unknown wire kind `{k}`"))),
    };
    let role = match *role {
        "data" => WireRole::Data,
        "ancilla" => WireRole::Ancilla,
        r => return Err(syntax(line, format!("unknown wire role `{r}`"))),
    };
    if c.wire_index(name).is_some() {
        return Err(syntax(line, format!("wire `{name}` declared twice")));
    }
    c.wires.push(Wire::new(*name, kind, role));
    c.validate_wires().map_err(|e| at(line, e))
}

fn wire_ref(c: &Circuit, name: &str, line: usize) -> Result<usize> {
    c.wire_index(name).ok_or_else(|| CircuitError::UnknownWire {
        line,
        name: name.to_string(),
    })
}

fn parse_at(c: &Circuit, rest: &[&str], line: usize, usage: &str) -> Result<(usize, usize)> {
    let [wire, "@", step] = rest else {
        return Err(syntax(line, format!("expected `{usage}`")));
    };
    let wire = wire_ref(c, wire, line)?;
    let step = step
        .parse::<usize>()
        .map_err(|_| syntax(line, format!("bad step `{step}`")))?;
    Ok((wire, step))
}

fn parse_gate(c: &Circuit, rest: &[&str], line: usize) -> Result<Gate> {
    let Some((&name, args)) = rest.split_first() else {
        return Err(syntax(line, "expected a gate name"));
    };
    let kind = parse_kind(name, line)?;
    let mut targets = Vec::new();
    let mut controls = Vec::new();
    let mut it = args.iter();
    while let Some(&tok) = it.next() {
        if tok.starts_with("ctrl") {
            let polarity = match tok {
                "ctrl+" => Polarity::One,
                "ctrl-" => Polarity::Zero,
                _ => return Err(syntax(line, format!("malformed control token `{tok}`"))),
            };
            let Some(&w) = it.next() else {
                return Err(syntax(line, format!("`{tok}` needs a wire")));
            };
            controls.push(Control {
                wire: wire_ref(c, w, line)?,
                polarity,
            });
        } else {
            if !controls.is_empty() {
                return Err(syntax(line, format!("target `{tok}` after controls")));
            }
            targets.push(wire_ref(c, tok, line)?);
        }
    }
    Ok(Gate::new(kind, targets, controls))
}

fn parse_kind(name: &str, line: usize) -> Result<GateKind> {
    if let Some(body) = name.strip_prefix("U(") {
        let body = body
            .strip_suffix(')')
            .ok_or_else(|| syntax(line, "custom unitary must end with `)`"))?;
        let entries = body
            .split(',')
            .map(|e| {
                let (re, im) = e
                    .split_once(':')
                    .ok_or_else(|| syntax(line, format!("matrix entry `{e}` is not re:im")))?;
                let p = |s: &str| {
                    s.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| syntax(line, format!("bad number `{s}`")))
                };
                Ok(C64::new(p(re)?, p(im)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let size = (entries.len() as f64).sqrt().round() as usize;
        return Unitary::new(size, entries)
            .map(GateKind::Custom)
            .map_err(|e| at(line, e));
    }
    Ok(match name.to_ascii_uppercase().as_str() {
        "I" => GateKind::I,
        "X" => GateKind::X,
        "Y" => GateKind::Y,
        "Z" => GateKind::Z,
        "H" => GateKind::H,
        "CNOT" | "CX" => GateKind::Cnot,
        "SWAP" => GateKind::Swap,
        _ => {
            return Err(CircuitError::UnknownGate {
                line,
                name: name.to_string(),
            })
        }
    })
}

/// Canonical text form; `parse_circuit(serialize_circuit(c)) == c`.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut s = String::new();
    let name = |w: usize| c.wires()[w].name.as_str();
    for w in c.wires() {
        let kind = match w.kind {
            WireKind::Qubit => "qubit",
            WireKind::Qutrit => "qutrit",
        };
        let role = match w.role {
            WireRole::Data => "data",
            WireRole::Ancilla => "ancilla",
        };
        let _ = writeln!(s, "wire {} {kind} {role}", w.name);
    }
    for g in c.gates() {
        s.push_str("gate ");
        match &g.kind {
            GateKind::Custom(u) => {
                s.push_str("U(");
                for (i, z) in u.entries().iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    let _ = write!(s, "{}:{}", z.re, z.im);
                }
                s.push(')');
            }
            k => s.push_str(k.name()),
        }
        for &t in &g.targets {
            let _ = write!(s, " {}", name(t));
        }
        for ctl in &g.controls {
            let sign = match ctl.polarity {
                Polarity::One => '+',
                Polarity::Zero => '-',
            };
            let _ = write!(s, " ctrl{sign} {}", name(ctl.wire));
        }
        s.push('\n');
    }
    for r in c.resets() {
        let _ = writeln!(s, "reset {} @ {}", name(r.wire), r.step);
    }
    for f in c.faults() {
        let _ = writeln!(s, "fault {} {} @ {}", f.op, name(f.wire), f.step);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_controls_and_comments() {
        let c = parse_circuit(
            "# three wires\nwire a qubit data\nwire b qubit data\nwire c qutrit ancilla\n\
             gate X a ctrl+ b ctrl- c  # Toffoli-like\nreset c @ 1\n",
        )
        .unwrap();
        assert_eq!(c.gates().len(), 1);
        assert_eq!(c.gates()[0].controls[1], Control::off(2));
        assert_eq!(c.reset_step(2), Some(1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_circuit("wire a qubit data\ngate FOO a\n").unwrap_err();
        assert_eq!(
            e,
            CircuitError::UnknownGate {
                line: 2,
                name: "FOO".into()
            }
        );
        let e = parse_circuit("wire a qubit data\n\ngate X b\n").unwrap_err();
        assert!(matches!(e, CircuitError::UnknownWire { line: 3, .. }));
        let e = parse_circuit("wire a qubit data\ngate X a ctrl a\n").unwrap_err();
        assert!(matches!(e, CircuitError::Syntax { line: 2, .. }));
        let e = parse_circuit("wire a qubit data\nwire b qubit data\ngate X a ctrl+\n").unwrap_err();
        assert!(matches!(e, CircuitError::Syntax { line: 3, .. }));
    }

    #[test]
    fn second_reset_of_a_wire_is_non_monotone() {
        let text = "wire d qubit data\nwire a qubit ancilla\ngate CNOT d a\ngate CNOT d a\n\
                    reset a @ 1\nreset a @ 2\n";
        assert_eq!(
            parse_circuit(text).unwrap_err(),
            CircuitError::NonMonotoneReset {
                line: 6,
                wire: "a".into()
            }
        );
    }

    #[test]
    fn reset_past_end_reports_its_line() {
        let e = parse_circuit("wire a qubit ancilla\nreset a @ 3\n").unwrap_err();
        assert!(matches!(e, CircuitError::AtLine { line: 2, .. }));
    }

    #[test]
    fn custom_unitary_round_trips() {
        let text = "wire a qubit data\ngate U(0:0,0:1,0:1,0:0) a\nfault Z a @ 1\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(serialize_circuit(&c), text);
    }
}
