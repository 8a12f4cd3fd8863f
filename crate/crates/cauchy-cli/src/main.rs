fn main() {
    println!("cauchy cli placeholder");
}
