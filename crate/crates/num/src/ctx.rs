/// Precision bookkeeping threaded through every numeric operation.
///
/// Precision is accounted in *decimal* digits: `out_digits` is what the caller
/// asked for, `guard_digits` absorbs accumulated rounding, and everything is
/// computed at `working() = out_digits + guard_digits` digits. Rounding is
/// always round-half-even; there is no other policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionContext {
    out_digits: u32,
    guard_digits: u32,
    max_terms: u64,
}

pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

impl PrecisionContext {
    /// Context with `out_digits` requested digits, default term cap 10^6 and
    /// guard digits 15 + ceil(log10(max_terms)).
    pub fn new(out_digits: u32) -> Self {
        assert!(out_digits >= 1, "out_digits must be positive");
        let mut ctx = PrecisionContext {
            out_digits,
            guard_digits: 0,
            max_terms: DEFAULT_MAX_TERMS,
        };
        ctx.guard_digits = Self::default_guard(ctx.max_terms);
        ctx
    }

    fn default_guard(max_terms: u64) -> u32 {
        15 + (max_terms as f64).log10().ceil() as u32
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        assert!(max_terms >= 1, "max_terms must be positive");
        self.max_terms = max_terms;
        self.guard_digits = self.guard_digits.max(Self::default_guard(max_terms));
        self
    }

    /// Override the guard digits (still clamped to the invariant minimum of 10).
    pub fn with_guard_digits(mut self, guard: u32) -> Self {
        self.guard_digits = guard.max(10);
        self
    }

    pub fn with_out_digits(mut self, out_digits: u32) -> Self {
        assert!(out_digits >= 1);
        self.out_digits = out_digits;
        self
    }

    pub fn out_digits(&self) -> u32 {
        self.out_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    /// Working precision in decimal digits.
    pub fn working(&self) -> u32 {
        self.out_digits + self.guard_digits
    }
}
