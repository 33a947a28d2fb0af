use super::{check, SynthError, SynthOptions};
use crate::logic::{dual_rail_cover, BooleanFunction};
use crate::netlist::{Netlist, NetlistBuilder};

/// Delay-insensitive minterm synthesis.
///
/// One `n`-input C-element per minterm (true-rail minterms first, each rail in
/// ascending minterm order), OR-merged per output rail. A rail with a single
/// minterm is taken straight from its C-element. For `n = 1` each minterm is a
/// single literal and both rails are plain wires.
pub fn synth_dims(f: &BooleanFunction, opts: &SynthOptions) -> Result<Netlist, SynthError> {
    check(f, opts)?;
    let covers = dual_rail_cover(f);
    let mut b = NetlistBuilder::new(f.n());
    let mut rail_nets = Vec::with_capacity(2);
    for rail in [true, false] {
        let terms: Vec<String> = covers
            .rail(rail)
            .terms()
            .iter()
            .map(|t| {
                let lits = t.literals().iter().map(|&l| b.input(l)).collect();
                b.c_or_wire(lits)
            })
            .collect();
        rail_nets.push(b.or_merge(terms, opts.or_fanin));
    }
    let f0 = rail_nets.pop().unwrap();
    let f1 = rail_nets.pop().unwrap();
    b.output("f", f1, f0);
    Ok(b.finish())
}
