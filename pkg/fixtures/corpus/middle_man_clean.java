package corpus;

public class LedgerFacade {
    private LedgerStore ledger;

    public String readRecord(String recordKey) {
        return ledger.recordText(recordKey);
    }

    public int openRecordCount() {
        int total = ledger.recordTally();
        int closed = ledger.closedRecordTally();
        return total - closed;
    }

    public boolean verifyBalance(int expectedTotal) {
        int observed = openRecordCount() * 2;
        return observed == expectedTotal;
    }
}
