class NestedBlocks {
    void nest() {
        {}
        {
            {
            }
        }
        int a = 1;
        {
            {
                a--;
            }
        }
        {
        }
    }
}
