class Breaks {
    int brk(int n) {
        int i = 0;
        outer:
        while (i < n) {
            while (true) {
                if (i > 5) {
                    break;
                }
                if (i > 7) {
                    break outer;
                }
                i++;
            }
            i = i + 2;
        }
        return i;
    }
}
