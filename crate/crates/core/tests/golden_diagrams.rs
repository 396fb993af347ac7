use orbitforge::diagram::{classify, RenderStyle};
use orbitforge::involution::Involution;

fn check(text: &str, n: usize, golden: &str) {
    let sigma = Involution::parse(text, n).unwrap();
    let d = classify(&sigma);
    assert_eq!(d.render(RenderStyle::Unicode), golden, "sigma = {text}");
    let ascii: String = golden
        .chars()
        .map(|c| match c {
            '⊗' => 'X',
            '−' => '-',
            '•' => '*',
            other => other,
        })
        .collect();
    assert_eq!(d.render(RenderStyle::Ascii), ascii);
}

#[test]
fn example1() {
    check("(1,4)(2,7)(3,6)", 7, include_str!("golden/example1.txt"));
}

#[test]
fn example2_longest_element() {
    check("(1,6)(2,5)(3,4)", 6, include_str!("golden/example2.txt"));
}

#[test]
fn example3_subregular() {
    check("(1,5)(2,6)(3,4)", 6, include_str!("golden/example3.txt"));
}

#[test]
fn example4() {
    check("(1,10)(2,5)(3,7)(4,9)(6,8)", 10, include_str!("golden/example4.txt"));
}
