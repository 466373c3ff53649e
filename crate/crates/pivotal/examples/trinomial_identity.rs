//! The combinatorial identity behind the ternary closed form.
//!
//! Counting the ballots of n other voters that leave one member pivotal
//! under yes/no/abstain voting can be done two ways:
//!
//! * sum over the number K of members who commit to yes or no: there are
//!   C(n,K) ways to choose them and C(K, floor(K/2)) tied-or-almost-tied
//!   splits among them;
//! * read the two central columns of the trinomial triangle, the
//!   coefficients of x^n and x^(n+1) in (x^2 + x + 1)^n.
//!
//! Both give the same integer, and the central column also satisfies a
//! three-term recurrence that this example checks against the literal
//! polynomial expansion.
//!
//! Run with: cargo run --release --example trinomial_identity

use pivotal::combinatorics::{
    binomial, central_trinomial, next_central_trinomial, trinomial_row, BigCount,
};
use pivotal::power::ternary_sum_via_trinomials;

fn main() {
    println!(
        "{:>4}  {:>24}  {:>24}  {:>24}",
        "n", "sum C(n,K)C(K,K/2)", "central t(n)", "next t(n+1 column)"
    );
    for n in 1..=16u64 {
        let direct: BigCount = (0..=n)
            .map(|k| binomial(n, k as i64) * binomial(k, (k / 2) as i64))
            .sum();
        let central = central_trinomial(n);
        let next = next_central_trinomial(n);
        assert_eq!(direct, &central + &next, "identity must hold at n = {n}");
        assert_eq!(direct, ternary_sum_via_trinomials(n));
        println!("{n:>4}  {direct:>24}  {central:>24}  {next:>24}");
    }

    // The recurrence agrees with expanding (x^2 + x + 1)^n coefficient by
    // coefficient, far past what the table above shows.
    for n in 0..=400u64 {
        let row = trinomial_row(n);
        assert_eq!(central_trinomial(n), row[n as usize]);
        if n > 0 {
            assert_eq!(next_central_trinomial(n), row[n as usize + 1]);
        }
    }
    println!();
    println!("recurrence equals literal polynomial expansion for n = 0..=400");

    // Growth is geometric with ratio approaching 3 (each extra voter has
    // three choices).
    let ratio = {
        let a = central_trinomial(400);
        let b = central_trinomial(399);
        let a_ln = pivotal::combinatorics::ln_big(&a);
        let b_ln = pivotal::combinatorics::ln_big(&b);
        (a_ln - b_ln).exp()
    };
    println!("t(400)/t(399) = {ratio:.6} (approaches 3)");
}
