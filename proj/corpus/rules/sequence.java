class Sequence {
    void seq() {
        int a = 1;
        int b = a;
        a = b + 1;
        a++;
    }
}
