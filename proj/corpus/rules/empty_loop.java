class EmptyLoop {
    void spin(boolean b) {
        while (b) {
        }
    }
}
