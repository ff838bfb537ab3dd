package corpus;

public class SupplierProfile {
    private MailingAddress address;
    private ContactPhone phone;
    private int supplierRank;

    public String contactSummary() {
        return address.singleLine() + " / " + phone.dialable();
    }

    public void promoteSupplier() {
        supplierRank = supplierRank + 1;
    }
}
