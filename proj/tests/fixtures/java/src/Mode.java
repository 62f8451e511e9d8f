public enum Mode {
    ON,
    OFF;

    public Mode flip() {
        return this == ON ? OFF : ON;
    }
}
