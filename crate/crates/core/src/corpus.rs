//! Named structures used by the tests, the acceptance suite and the CLI.

use crate::category::{CategoryBuilder, FiniteCategory};
use crate::ideal::IdealSubset;
use crate::monoid::FiniteMonoid;

/// `{E, a, 0}` with `a·a = 0` and `0` absorbing.
pub fn m3() -> FiniteMonoid {
    FiniteMonoid::from_names("M3", &["E", "a", "0"], "E", &[&["E", "a", "0"], &["a", "0", "0"], &["0", "0", "0"]])
        .expect("M3 is a monoid")
}

/// `{E, a, q1, q2}` with `a·a = q1` and every other non-unit product `q2`.
pub fn m4() -> FiniteMonoid {
    FiniteMonoid::from_names(
        "M4",
        &["E", "a", "q1", "q2"],
        "E",
        &[
            &["E", "a", "q1", "q2"],
            &["a", "q1", "q2", "q2"],
            &["q1", "q2", "q2", "q2"],
            &["q2", "q2", "q2", "q2"],
        ],
    )
    .expect("M4 is a monoid")
}

/// `{E, 0}` with `0` absorbing.
pub fn two_element_zero() -> FiniteMonoid {
    FiniteMonoid::from_names("Two", &["E", "0"], "E", &[&["E", "0"], &["0", "0"]]).expect("{E,0} is a monoid")
}

/// `{E, a, b, 0}` with `a·a = b` and all longer products `0`: the zero is
/// absorbing but not associative (`a·a·a = 0` while `a·a = b`).
pub fn nilpotent_cubic() -> FiniteMonoid {
    FiniteMonoid::from_names(
        "N3",
        &["E", "a", "b", "0"],
        "E",
        &[&["E", "a", "b", "0"], &["a", "b", "0", "0"], &["b", "0", "0", "0"], &["0", "0", "0", "0"]],
    )
    .expect("N3 is a monoid")
}

pub fn ideal(m: &FiniteMonoid, names: &[&str]) -> IdealSubset {
    let members = names.iter().map(|n| m.index_of(n).unwrap_or_else(|| panic!("no element {n}"))).collect();
    IdealSubset::from_members(members)
}

/// The monoid/ideal pairs the checks are run against by default.
pub fn monoid_ideal_pairs() -> Vec<(String, FiniteMonoid, IdealSubset)> {
    let m3 = m3();
    let m4 = m4();
    vec![
        ("M3/{0}".to_string(), m3.clone(), ideal(&m3, &["0"])),
        ("M3/{a,0}".to_string(), m3.clone(), ideal(&m3, &["a", "0"])),
        ("M4/{q1,q2}".to_string(), m4.clone(), ideal(&m4, &["q1", "q2"])),
    ]
}

/// `A --f--> B` with identities.
pub fn k2() -> FiniteCategory {
    let mut b = CategoryBuilder::new("K2");
    b.objects(&["A", "B"]);
    b.arrow("f", "A", "B");
    b.build().expect("K2 is well formed")
}

pub fn empty_category() -> FiniteCategory {
    CategoryBuilder::new("Empty").build().expect("empty category")
}

/// One object `*`, arrows `id` and `g` with `g∗g = g`.
pub fn idempotent_loop() -> FiniteCategory {
    let mut b = CategoryBuilder::new("Loop");
    b.objects(&["*"]);
    b.identity("*", "id");
    b.arrow("g", "*", "*");
    b.compose("g", "g", "g");
    b.build().expect("idempotent loop")
}

/// The one-object category whose arrows are the elements of `m`.
pub fn monoid_as_category(m: &FiniteMonoid) -> FiniteCategory {
    let mut b = CategoryBuilder::new(format!("B{}", m.name()));
    b.objects(&["*"]);
    let names: Vec<String> = m.elements().iter().map(|e| format!("m_{e}")).collect();
    b.identity("*", &names[m.unit()]);
    for x in m.non_units() {
        b.arrow(&names[x], "*", "*");
    }
    for x in m.non_units() {
        for y in m.non_units() {
            b.compose(&names[x], &names[y], &names[m.mul(x, y)]);
        }
    }
    b.build().expect("one-object category from a monoid")
}

/// The poset `0 < 1 < … < n-1` as a category, arrows named `a<i><j>`.
pub fn chain_category(n: usize) -> FiniteCategory {
    let mut b = CategoryBuilder::new(format!("Chain{n}"));
    let objects: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    for o in &objects {
        b.object(o);
    }
    let name = |i: usize, j: usize| format!("a{i}{j}");
    for i in 0..n {
        for j in i + 1..n {
            b.arrow(&name(i, j), &objects[i], &objects[j]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                b.compose(&name(i, j), &name(j, k), &name(i, k));
            }
        }
    }
    b.build().expect("chain category")
}

/// Two objects with a pair of parallel arrows `f, g: A → B`.
pub fn parallel_pair() -> FiniteCategory {
    let mut b = CategoryBuilder::new("Parallel");
    b.objects(&["A", "B"]);
    b.arrow("f", "A", "B");
    b.arrow("g", "A", "B");
    b.build().expect("parallel pair")
}

/// `A ⇄ B` with `f∗g = idA`, `g∗f = idB`.
pub fn isomorphism_pair() -> FiniteCategory {
    let mut b = CategoryBuilder::new("Iso");
    b.objects(&["A", "B"]);
    b.arrow("f", "A", "B");
    b.arrow("g", "B", "A");
    b.compose("f", "g", "idA");
    b.compose("g", "f", "idB");
    b.build().expect("isomorphism pair")
}

/// Three objects without non-identity arrows.
pub fn discrete(n: usize) -> FiniteCategory {
    let mut b = CategoryBuilder::new(format!("Discrete{n}"));
    for i in 0..n {
        b.object(&format!("D{i}"));
    }
    b.build().expect("discrete category")
}

/// `A → B ← C`: a cospan.
pub fn cospan() -> FiniteCategory {
    let mut b = CategoryBuilder::new("Cospan");
    b.objects(&["A", "B", "C"]);
    b.arrow("f", "A", "B");
    b.arrow("g", "C", "B");
    b.build().expect("cospan")
}

/// `A → B` followed by an idempotent endomorphism `e` of `B`.
pub fn arrow_into_idempotent() -> FiniteCategory {
    let mut b = CategoryBuilder::new("ArrowIdem");
    b.objects(&["A", "B"]);
    b.arrow("f", "A", "B");
    b.arrow("e", "B", "B");
    b.arrow("h", "A", "B");
    b.compose("e", "e", "e");
    b.compose("f", "e", "h");
    b.compose("h", "e", "h");
    b.build().expect("arrow into idempotent")
}

/// The category corpus: at least ten categories of varied shape.
pub fn categories() -> Vec<FiniteCategory> {
    let z2 = FiniteMonoid::from_names("Z2", &["E", "s"], "E", &[&["E", "s"], &["s", "E"]]).expect("Z2");
    vec![
        k2(),
        empty_category(),
        idempotent_loop(),
        monoid_as_category(&m3()),
        monoid_as_category(&z2),
        chain_category(3),
        chain_category(4),
        parallel_pair(),
        isomorphism_pair(),
        discrete(3),
        cospan(),
        arrow_into_idempotent(),
    ]
}
