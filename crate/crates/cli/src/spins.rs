use spinvol::{HalfInt, QuadSpins};

use crate::error::CliError;

pub fn parse(s: &str, twice: bool) -> Result<HalfInt, CliError> {
    let j = if twice { HalfInt::parse_twice(s) } else { HalfInt::parse_spin(s) };
    Ok(j?)
}

pub fn parse_quad(args: &[String], twice: bool) -> Result<QuadSpins, CliError> {
    let [a, b, c, d] = args else {
        return Err(CliError::Usage(format!("expected four spins, got {}", args.len())));
    };
    Ok(QuadSpins::new(parse(a, twice)?, parse(b, twice)?, parse(c, twice)?, parse(d, twice)?))
}

pub fn quad_twice(q: &QuadSpins) -> Vec<i64> {
    q.sides().iter().map(|j| j.twice()).collect()
}
