class Jumps {
    void jumps() {
        a:
        while (true) {
            int x = 1;
            if (x > 0) {
                break a;
            }
            continue;
        }
    }
}
