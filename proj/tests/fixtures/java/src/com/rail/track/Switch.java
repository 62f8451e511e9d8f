package com.rail.track;

/* block comment decoy:
   public class Phantom { public void boo() {} }
*/
public class Switch {
    private String banner = "public class Banner { void fake() {} }";
    private char open = '{';
    private int turns = count();

    static {
        System.out.println("loaded");
    }

    public void route() {
        turns += 1;
    }

    private int count() {
        return turns;
    }

    @Override
    public String toString() {
        return banner + open;
    }

    class Motor {
        void spin() {
        }
    }
}
