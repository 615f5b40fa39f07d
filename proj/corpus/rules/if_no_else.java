class IfNoElse {
    int abs(int x) {
        int r = x;
        if (r < 0) {
            r = -r;
        }
        return r;
    }
}
