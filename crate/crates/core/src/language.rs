//! Factor-language membership.
//!
//! A word is admissible when it occurs in some point of the shift. Locally
//! that means:
//!
//! 1. differently coloured symbols are never adjacent,
//! 2. two blocks separated only by zeros have neighbouring colours `|j - j'| = 1`
//!    (in particular never the same colour),
//! 3. such an interior zero-run of length `λ` between blocks of visible
//!    lengths `a`, `b` satisfies `λ ≥ max(1, τ(a + b))`.
//!
//! Leading and trailing zero-runs are unconstrained: the flanking block can
//! stop right outside the window and zeros can continue forever.
//!
//! [`zero_framed_point_is_valid`] checks the point `0^∞ u 0^∞` directly
//! against the definition of the shift; [`admissible_extension_exists`]
//! searches over such points and serves as the oracle for [`is_admissible`].

use alloc::vec::Vec;

use rand::Rng;

use crate::{decompose, Error, Result, Segment, ShiftParams, Symbol, Word};

/// Membership in the factor language.
pub fn is_admissible(word: &[Symbol], params: &ShiftParams) -> Result<bool> {
    params.check_symbols(word)?;
    Ok(admissible_unchecked(word, params))
}

/// [`is_admissible`] for words already known to be over the alphabet.
pub fn admissible_unchecked(word: &[Symbol], params: &ShiftParams) -> bool {
    let tau = params.tau();
    let n = word.len();
    let mut prev: Option<(u32, usize)> = None;
    let mut gap: usize = 0;
    let mut i = 0;
    while i < n {
        if word[i] == 0 {
            let start = i;
            while i < n && word[i] == 0 {
                i += 1;
            }
            gap = i - start;
            continue;
        }
        let color = params.color(word[i]).unwrap_or(0);
        let start = i;
        while i < n && word[i] != 0 && params.color(word[i]) == Some(color) {
            i += 1;
        }
        if i < n && word[i] != 0 {
            return false;
        }
        let len = i - start;
        if let Some((pc, plen)) = prev {
            if !params.colors_adjacent(pc, color) || !tau.gap_suffices(gap, plen, len) {
                return false;
            }
        }
        prev = Some((color, len));
        gap = 0;
    }
    true
}

/// Whether `0^∞ u 0^∞` is a point of the shift.
///
/// Every block of `u` is complete here, so the gap rule applies to each pair
/// of consecutive blocks with their true lengths.
pub fn zero_framed_point_is_valid(support: &[Symbol], params: &ShiftParams) -> Result<bool> {
    let d = decompose(support, params)?;
    let tau = params.tau();
    for (i, seg) in d.segments.iter().enumerate() {
        let Segment::ColorBlock { color: a_color, len: a } = *seg else {
            continue;
        };
        match d.segments.get(i + 1) {
            Some(Segment::ColorBlock { .. }) => return Ok(false),
            Some(&Segment::ZeroRun { len: lambda }) => {
                if let Some(&Segment::ColorBlock { color: b_color, len: b }) = d.segments.get(i + 2) {
                    if a_color.abs_diff(b_color) != 1 {
                        return Ok(false);
                    }
                    let lhs = u128::from(tau.denom()) * lambda as u128;
                    let rhs = u128::from(tau.numer()) * (a + b) as u128;
                    if lambda == 0 || lhs < rhs {
                        return Ok(false);
                    }
                }
            }
            None => {}
        }
    }
    Ok(true)
}

/// Exhaustive search for `p` of length `left_pad` and `s` of length
/// `right_pad` such that `0^∞ p·word·s 0^∞` is a point of the shift.
pub fn admissible_extension_exists(
    word: &[Symbol],
    left_pad: usize,
    right_pad: usize,
    params: &ShiftParams,
) -> Result<bool> {
    params.check_symbols(word)?;
    const BUDGET: u128 = 50_000_000;
    let k = params.alphabet_size() as u128;
    let pads = (left_pad + right_pad) as u32;
    let required = k.checked_pow(pads).unwrap_or(u128::MAX);
    if required > BUDGET {
        return Err(Error::BudgetExceeded { required, budget: BUDGET });
    }
    let mut buf: Vec<Symbol> = alloc::vec![0; left_pad + word.len() + right_pad];
    buf[left_pad..left_pad + word.len()].copy_from_slice(word);
    let free: Vec<usize> = (0..left_pad)
        .chain(left_pad + word.len()..buf.len())
        .collect();
    let max = params.max_symbol();
    loop {
        if zero_framed_point_is_valid(&buf, params)? {
            return Ok(true);
        }
        // odometer over the free positions
        let mut carry = true;
        for &pos in &free {
            if buf[pos] < max {
                buf[pos] += 1;
                carry = false;
                break;
            }
            buf[pos] = 0;
        }
        if carry {
            return Ok(false);
        }
    }
}

/// All contiguous subwords of length `len`.
pub fn factors(word: &[Symbol], len: usize) -> impl Iterator<Item = &[Symbol]> {
    word.windows(len.max(1)).filter(move |_| len > 0)
}

/// Symbols `s` such that `word · s` stays admissible. `0` always qualifies
/// when `word` is admissible.
pub fn right_extensions(word: &[Symbol], params: &ShiftParams) -> Vec<Symbol> {
    let mut buf = word.to_vec();
    buf.push(0);
    let last = buf.len() - 1;
    (0..=params.max_symbol())
        .filter(|&s| {
            buf[last] = s;
            admissible_unchecked(&buf, params)
        })
        .collect()
}

/// Symbols `s` such that `s · word` stays admissible.
pub fn left_extensions(word: &[Symbol], params: &ShiftParams) -> Vec<Symbol> {
    let mut buf = Vec::with_capacity(word.len() + 1);
    buf.push(0);
    buf.extend_from_slice(word);
    (0..=params.max_symbol())
        .filter(|&s| {
            buf[0] = s;
            admissible_unchecked(&buf, params)
        })
        .collect()
}

/// Grows an admissible word one symbol at a time, each time choosing
/// uniformly among the admissible continuations.
pub fn extend_randomly<R: Rng + ?Sized>(
    word: &Word,
    left: usize,
    right: usize,
    params: &ShiftParams,
    rng: &mut R,
) -> Result<Word> {
    if !is_admissible(word, params)? {
        return Err(Error::Inadmissible(alloc::format!("{word}")));
    }
    let mut symbols = word.symbols().to_vec();
    for _ in 0..right {
        let options = right_extensions(&symbols, params);
        symbols.push(options[rng.gen_range(0..options.len())]);
    }
    for _ in 0..left {
        let options = left_extensions(&symbols, params);
        symbols.insert(0, options[rng.gen_range(0..options.len())]);
    }
    Ok(Word::new(symbols))
}

/// Random admissible word of length `len` (not uniformly distributed over
/// the language).
pub fn random_admissible_word<R: Rng + ?Sized>(len: usize, params: &ShiftParams, rng: &mut R) -> Word {
    extend_randomly(&Word::empty(), 0, len, params, rng).expect("the empty word is admissible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Tau;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(nu: u32, tau: Tau, colors: u32) -> ShiftParams {
        ShiftParams::new(nu, tau, colors).unwrap()
    }

    fn p22() -> ShiftParams {
        p(2, Tau::integer(1), 2)
    }

    fn adm(w: &[Symbol], params: &ShiftParams) -> bool {
        is_admissible(w, params).unwrap()
    }

    #[test]
    fn membership_examples() {
        let params = p22();
        assert!(adm(&[1, 0, 0, 3], &params));
        assert!(!adm(&[1, 0, 3], &params));
        assert!(!adm(&[1, 0, 0, 1], &params));
        assert!(adm(&[1, 2, 2, 1, 1], &params));
        assert!(adm(&[3, 4, 4], &params));
        assert!(!adm(&[1, 3], &params));
        assert!(adm(&[], &params));
        assert!(adm(&[0, 0, 3, 0], &params));
        assert!(is_admissible(&[9], &params).is_err());
    }

    #[test]
    fn visible_lengths_drive_the_gap() {
        let params = p22();
        // a = 2, b = 1 needs λ ≥ 3
        assert!(!adm(&[1, 1, 0, 0, 3], &params));
        assert!(adm(&[1, 1, 0, 0, 0, 3], &params));
        // the middle block counts towards both of its gaps
        assert!(adm(&[1, 0, 0, 0, 3, 3, 0, 0, 0, 1], &params));
        assert!(!adm(&[1, 0, 0, 0, 3, 3, 0, 0, 1], &params));
        assert!(!adm(&[1, 0, 0, 3, 3, 0, 0, 0, 1], &params));
        assert!(adm(&[0, 0, 0, 3, 3, 0, 0, 0, 1], &params));
    }

    #[test]
    fn color_chain_rule() {
        let params = p(2, Tau::integer(1), 3);
        assert!(adm(&[1, 0, 0, 3], &params));
        assert!(adm(&[3, 0, 0, 5], &params));
        assert!(!adm(&[1, 0, 0, 0, 0, 5], &params));
    }

    #[test]
    fn tau_zero_still_needs_a_zero() {
        let params = p(2, Tau::zero(), 2);
        assert!(adm(&[1, 1, 1, 0, 3, 3], &params));
        assert!(!adm(&[1, 3], &params));
    }

    #[test]
    fn extension_examples() {
        let params = p22();
        assert!(admissible_extension_exists(&[1, 0, 0, 3], 1, 1, &params).unwrap());
        assert!(!admissible_extension_exists(&[1, 0, 3], 0, 0, &params).unwrap());
        assert!(!admissible_extension_exists(&[1, 0, 3], 1, 2, &params).unwrap());
        assert!(admissible_extension_exists(&[], 2, 2, &params).unwrap());
    }

    /// Every word of length ≤ 8: local rule ⇔ occurs in a point.
    #[test]
    fn local_rule_matches_extension_oracle() {
        let params = p22();
        let k = params.alphabet_size() as u32;
        for len in 0..=8u32 {
            for code in 0..k.pow(len) {
                let mut c = code;
                let w: Vec<Symbol> = (0..len)
                    .map(|_| {
                        let s = c % k;
                        c /= k;
                        s
                    })
                    .collect();
                let local = adm(&w, &params);
                assert_eq!(local, admissible_extension_exists(&w, 0, 0, &params).unwrap(), "{w:?}");
                if len <= 4 {
                    assert_eq!(local, admissible_extension_exists(&w, 1, 1, &params).unwrap(), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn random_words_are_admissible() {
        let params = p(3, Tau::new(1, 2).unwrap(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_admissible_word(25, &params, &mut rng);
            assert_eq!(w.len(), 25);
            assert!(adm(&w, &params));
        }
    }

    fn arb_admissible() -> impl Strategy<Value = (ShiftParams, Word)> {
        (0u64..4, 1u64..3, 1u32..4, any::<u64>(), 0usize..30).prop_map(|(n, d, l, seed, len)| {
            let params = ShiftParams::new(2, Tau::new(n, d).unwrap(), l).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_admissible_word(len, &params, &mut rng);
            (params, w)
        })
    }

    proptest! {
        #[test]
        fn factor_closed((params, w) in arb_admissible()) {
            for i in 0..=w.len() {
                for j in i..=w.len() {
                    prop_assert!(adm(&w[i..j], &params));
                }
            }
        }

        #[test]
        fn zero_padding_closed((params, w) in arb_admissible(), l in 0usize..4, r in 0usize..4) {
            prop_assert!(adm(&w.pad_zeros(l, r), &params));
        }

        #[test]
        fn leading_zeros_irrelevant((params, w) in arb_admissible()) {
            if w.first() == Some(&0) {
                prop_assert!(adm(&w[1..], &params));
                prop_assert!(adm(&w.pad_zeros(3, 0), &params));
            }
        }

        #[test]
        fn larger_tau_only_removes_words(w in prop::collection::vec(0u32..=4, 0..14), n in 0u64..6) {
            let lo = p(2, Tau::new(n, 2).unwrap(), 2);
            let hi = p(2, Tau::new(n + 1, 2).unwrap(), 2);
            if adm(&w, &hi) {
                prop_assert!(adm(&w, &lo));
            }
        }
    }
}
