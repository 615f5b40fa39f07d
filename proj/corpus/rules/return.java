class Returns {
    int early(int x) {
        if (x > 10) {
            return 10;
        }
        x = x + 1;
        return x;
    }
}
