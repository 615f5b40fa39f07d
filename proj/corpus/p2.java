class Sum {
    int sum(int n) {
        int s = 0;
        int i = 0;
        while (i < n) {
            s = s + i;
            i++;
        }
        return s;
    }
}
