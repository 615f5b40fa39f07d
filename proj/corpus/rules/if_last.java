class IfLast {
    void last(int x) {
        if (x > 0) {
            x = 0;
        }
    }
}
