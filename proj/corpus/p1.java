public class Foo {
    public int testMethod() {
        int a = 1;
        int b = 2;
        int c = a + b;
        return c;
    }
}
