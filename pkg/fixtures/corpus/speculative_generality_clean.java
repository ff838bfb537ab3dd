package corpus;

public class RetrySyncAdapter {
    private int attemptBudget;

    public boolean shouldRetry(int attemptsSoFar) {
        return attemptsSoFar < attemptBudget;
    }

    public void widenBudget(int extraAttempts) {
        attemptBudget = attemptBudget + extraAttempts;
    }
}

class SyncRunner {
    private RetrySyncAdapter adapter;

    public int runSync(int maxRounds) {
        int rounds = 0;
        while (adapter.shouldRetry(rounds) && rounds < maxRounds) {
            rounds = rounds + 1;
        }
        return rounds;
    }
}
