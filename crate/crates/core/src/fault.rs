/// Seeded corruptions of the rewriting rules, used as negative controls.
#[cfg_attr(not(feature = "fault-injection"), allow(dead_code))]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Flips the sign of the `(v^2 - 1)` term in the Bernstein relation.
    BernsteinSign,
    /// Uses `alpha-dot - 2r` in place of `alpha-dot + 2r` in the Lusztig twist.
    LusztigTwist,
    /// Drops the conjugation by `e_B` from the Koszul route of the diagram.
    SkipToddConjugation,
    /// Lets `t_s` act by `+1` on the graded sign module.
    SignModulePlus,
    /// Replaces `rho-dot` by `-rho-dot` in the standalone display identity.
    RhoSign,
}
