package corpus;

public class ArchiveGateway {
    private ArchiveStore store;

    public String fetchEntry(String entryKey) {
        return store.lookupEntry(entryKey);
    }

    public void archivePayload(String entryKey, String payload) {
        store.persistEntry(entryKey, payload);
    }

    public int archivedTotal() {
        return store.entryTally();
    }

    public boolean hasCapacity() {
        int used = archivedTotal();
        return used < 10000;
    }
}
