package corpus;

public class ShelfLabeler {
    private String labelPrefix;
    private int nextSequence;

    public String issueLabel(int aisleNumber) {
        String issued = labelPrefix + aisleNumber + "-" + nextSequence;
        nextSequence = nextSequence + 1;
        return issued;
    }

    public void resetSequence(int startValue) {
        nextSequence = startValue;
    }

    public boolean acceptsAisle(int aisleNumber) {
        return aisleNumber >= 0 && aisleNumber < 40;
    }
}
