/// The reference expressions each derivation step is checked against,
/// written in the parser's input syntax.
///
/// Fractions are `(numerator, denominator)` pairs. `Default` holds the
/// reference forms; tests swap individual entries to exercise the failure
/// path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedForms {
    /// Coefficients of x^5, x^3 and x in g(x) - g(-x).
    pub odd_x5: String,
    pub odd_x3: String,
    pub odd_x1: String,
    pub b1: (String, String),
    pub b2: (String, String),
    pub x5_substituted: (String, String),
    pub a2_factor: String,
    pub a2: (String, String),
    pub b2_final: (String, String),
    pub h2_form_a: String,
    pub h2_form_b: String,
    /// Factor clearing the denominators of h(x/y).
    pub h2_scale: String,
    pub y_rescale: (String, String),
    pub qa: String,
    pub qb: String,
    pub qc: String,
    pub qd: String,
}

fn s(text: &str) -> String {
    text.to_string()
}

fn frac(num: &str, den: &str) -> (String, String) {
    (s(num), s(den))
}

impl Default for ExpectedForms {
    fn default() -> Self {
        Self {
            odd_x5: s("6(a1*a2^2 + b1*b2^2)"),
            odd_x3: s("2(6a0*a1*a2 + 6b0*b1*b2 + a1^3 + b1^3)"),
            odd_x1: s("6(a0^2*a1 + b0^2*b1)"),
            b1: frac("-a0^2*a1", "b0^2"),
            b2: frac("(6a0*a2 + a1^2)*b0^6 - a1^2*a0^6", "6b0^5*a0^2"),
            x5_substituted: frac(
                "a1^3(b0^6 - a0^6)*(a0^6*a1^2 - 12a0*a2*b0^6 - a1^2*b0^6)",
                "6a0^2*b0^12",
            ),
            a2_factor: s("a0^6*a1^2 - 12a0*a2*b0^6 - a1^2*b0^6"),
            a2: frac("a1^2(a0^6 - b0^6)", "12a0*b0^6"),
            b2_final: frac("-a1^2(a0^6 - b0^6)", "12a0^2*b0^5"),
            h2_form_a: s("12q^3*p^6*y^2 + 12q^2*p^6*x*y + q(q^6 - p^6)*x^2"),
            h2_form_b: s("12q^2*p^7*y^2 - 12q^4*p^4*x*y - p(q^6 - p^6)*x^2"),
            h2_scale: s("12q^2*p^6*y^2"),
            y_rescale: frac("y", "2q*p^3"),
            qa: s("3q*y^2 + 6q*p^3*x*y - q(p^6 - q^6)*x^2"),
            qb: s("3p*y^2 - 6p*q^3*x*y + p(p^6 - q^6)*x^2"),
            qc: s("3q*y^2 - 6q*p^3*x*y - q(p^6 - q^6)*x^2"),
            qd: s("3p*y^2 + 6p*q^3*x*y + p(p^6 - q^6)*x^2"),
        }
    }
}
