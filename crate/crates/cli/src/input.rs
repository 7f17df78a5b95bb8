//! Parsing of command-line arguments into engine values.

use std::io::Read;

use tropicaust_core::json::{parse_domain, parse_list, parse_point_str};
use tropicaust_core::lattice::parse_rat;
use tropicaust_core::{ConvexDomain, Direction, Error, Rat, RatPoint, Result};

/// A domain given as a file path, `-` for standard input, or inline JSON.
pub fn domain(arg: &str) -> Result<ConvexDomain> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Invalid(format!("cannot read stdin: {e}")))?;
        buf
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("cannot read {arg}: {e}")))?
    };
    parse_domain(&text)
}

pub fn rational(arg: &str) -> Result<Rat> {
    parse_rat(arg)
}

/// A non-negative time.
pub fn time(arg: &str) -> Result<Rat> {
    let t = parse_rat(arg)?;
    if t < Rat::default() {
        return Err(Error::NegativeTime(t.to_string()));
    }
    Ok(t)
}

/// A `;`-separated list of rationals, e.g. `1/4;1/2`.
pub fn times(arg: &str) -> Result<Vec<Rat>> {
    parse_list(arg, time)
}

pub fn point(arg: &str) -> Result<RatPoint> {
    parse_point_str(arg)
}

/// Two legs `"a,b;c,d"`; non-primitive vectors are reduced.
pub fn legs(arg: &str) -> Result<(Direction, Direction)> {
    let legs = parse_list(arg, |s| {
        let v = tropicaust_core::json::parse_vec_str(s)?;
        Ok(tropicaust_core::lattice::primitive(&v)?.0)
    })?;
    match <[Direction; 2]>::try_from(legs) {
        Ok([a, b]) => Ok((a, b)),
        Err(v) => Err(Error::Parse(format!("expected two legs, got {}", v.len()))),
    }
}
