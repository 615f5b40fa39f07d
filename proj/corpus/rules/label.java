class Labels {
    int lbl(int n) {
        int k = n;
        outer:
        {
            k = k + 1;
            if (k > 3) {
                break outer;
            }
            k = k - 1;
        }
        inner:
        k = k * 2;
        return k;
    }
}
