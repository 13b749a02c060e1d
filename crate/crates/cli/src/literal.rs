//! Complex literals `a`, `bi`, `a+bi`, `a-bi` and their printed form.

use std::fmt::Write;

use wp_products::Complex64;

fn real(s: &str) -> Option<f64> {
    let ok = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
        && s.bytes().any(|b| b.is_ascii_digit());
    ok.then(|| s.parse().ok()).flatten().filter(|x: &f64| x.is_finite())
}

/// Parses a literal with decimal (optionally exponent) parts and no spaces.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("invalid complex literal {s:?}: expected a, bi, a+bi or a-bi");
    let Some(body) = s.strip_suffix('i') else {
        return real(s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // The split sign is the last + or - that does not follow an exponent marker.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| matches!(c, '+' | '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    match split {
        Some(i) => {
            let re = real(&body[..i]).ok_or_else(bad)?;
            let im = real(&body[i..]).ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        None => real(body).map(|im| Complex64::new(0.0, im)).ok_or_else(bad),
    }
}

fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.prec$e}", prec = digits - 1)
    }
}

/// `a`, `a+bi` or `a-bi` with 15 significant digits, or the shortest
/// round-trip representation when `full` is set.
pub fn format_complex(z: Complex64, full: bool) -> String {
    let f = |x: f64| if full { format!("{x:?}") } else { significant(x, 15) };
    let mut s = f(z.re);
    if z.im != 0.0 {
        let im = f(z.im.abs());
        let sign = if z.im < 0.0 { '-' } else { '+' };
        write!(s, "{sign}{im}i").expect("write to String");
    }
    s
}
