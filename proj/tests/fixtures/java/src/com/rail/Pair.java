package com.rail;

public class Pair {
    private int a;
    private int b;

    public Pair(int a, int b) {
        this.a = a;
        this.b = b;
    }

    public int first() {
        return a;
    }

    public int second() {
        return b;
    }

    private void normalize() {
        if (a > b) {
            int t = a;
            a = b;
            b = t;
        }
    }
}

class PairHelper {
    static Pair of(int a, int b) {
        return new Pair(a, b);
    }
}
