//! Basis-state labels: human-readable tokens resolved to flat indices in the
//! row-major tensor basis. A bare integer index is accepted for every model;
//! the spin tokens use 'e' for the upper level because the su(2) basis is
//! ordered by descending weight.

/// Shape of the product basis, fixing which label grammar applies.
pub enum Dims {
    /// Single factor, integer indices only.
    Flat { dim: usize },
    /// atom (x) atom (x) cavity, labels like `gg0` or `ee2`.
    TwoAtom { fock_c: usize },
    /// mode a (x) mode b, labels like `0a2b`.
    Amplifier { fock_a: usize, fock_b: usize },
    /// collective spin (x) field mode, labels like `g1` when the spin part
    /// has exactly two levels.
    Dicke { atom_levels: usize, fock: usize },
}

impl Dims {
    pub fn total(&self) -> usize {
        match self {
            Dims::Flat { dim } => *dim,
            Dims::TwoAtom { fock_c } => 4 * fock_c,
            Dims::Amplifier { fock_a, fock_b } => fock_a * fock_b,
            Dims::Dicke { atom_levels, fock } => atom_levels * fock,
        }
    }
}

fn atom_level(c: char) -> Option<usize> {
    match c {
        'e' => Some(0),
        'g' => Some(1),
        _ => None,
    }
}

fn photon(key: &str, raw: &str, digits: &str, fock: usize) -> Result<usize, String> {
    let n: usize = digits
        .parse()
        .map_err(|_| format!("{key}: expected a photon count in {raw}"))?;
    if n >= fock {
        return Err(format!(
            "{key}: photon count {n} is outside the truncation {fock}"
        ));
    }
    Ok(n)
}

/// Resolves a label to a flat index, or explains the accepted forms.
pub fn parse(key: &'static str, raw: &str, dims: &Dims) -> Result<usize, String> {
    if raw.chars().all(|c| c.is_ascii_digit()) && !raw.is_empty() {
        let idx: usize = raw
            .parse()
            .map_err(|_| format!("{key}: index {raw} does not fit"))?;
        let total = dims.total();
        if idx >= total {
            return Err(format!(
                "{key}: index {idx} is out of range for dimension {total}"
            ));
        }
        return Ok(idx);
    }
    match dims {
        Dims::Flat { dim } => Err(format!(
            "{key}: expected a basis index below {dim}, got {raw}"
        )),
        Dims::TwoAtom { fock_c } => {
            let mut chars = raw.chars();
            let a1 = chars.next().and_then(atom_level);
            let a2 = chars.next().and_then(atom_level);
            match (a1, a2) {
                (Some(a1), Some(a2)) => {
                    let n = photon(key, raw, chars.as_str(), *fock_c)?;
                    Ok((a1 * 2 + a2) * fock_c + n)
                }
                _ => Err(format!(
                    "{key}: expected a label like gg0 or ee1, got {raw}"
                )),
            }
        }
        Dims::Amplifier { fock_a, fock_b } => {
            let err = || format!("{key}: expected a label like 0a2b, got {raw}");
            let body = raw.strip_suffix('b').ok_or_else(err)?;
            let (na, nb) = body.split_once('a').ok_or_else(err)?;
            let na = photon(key, raw, na, *fock_a)?;
            let nb = photon(key, raw, nb, *fock_b)?;
            Ok(na * fock_b + nb)
        }
        Dims::Dicke { atom_levels, fock } => {
            if *atom_levels != 2 {
                return Err(format!(
                    "{key}: e/g labels need a two-level spin part; use a flat \
                     index below {}",
                    dims.total()
                ));
            }
            let mut chars = raw.chars();
            match chars.next().and_then(atom_level) {
                Some(level) => {
                    let n = photon(key, raw, chars.as_str(), *fock)?;
                    Ok(level * fock + n)
                }
                None => Err(format!("{key}: expected a label like g0 or e2, got {raw}")),
            }
        }
    }
}
