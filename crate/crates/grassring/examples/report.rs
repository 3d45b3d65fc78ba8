fn main() {
    let cat = grassring::catalog::Catalog::default_catalog();
    let r = grassring::verify::run(cat, std::env::args().nth(1).as_deref());
    print!("{r}");
}
