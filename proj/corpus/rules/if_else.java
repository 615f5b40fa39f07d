class IfElse {
    int max(int x, int y) {
        int m = 0;
        if (x > y) {
            m = x;
        } else {
            m = y;
        }
        return m;
    }
}
