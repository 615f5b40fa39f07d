class Continues {
    int cnt(int n) {
        int i = 0;
        int s = 0;
        outer:
        while (i < n) {
            i++;
            while (s < i) {
                s = s + 1;
                if (s > 3) {
                    continue outer;
                }
                if (s > 2) {
                    continue;
                }
                s = s + 2;
            }
        }
        return s;
    }
}
